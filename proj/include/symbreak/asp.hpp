#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symbreak/parser.hpp"
#include "symbreak/rule.hpp"

namespace symbreak {

// Ground variable tuple as it appears in the emitted facts.
using Tuple = std::vector<int>;

struct EncodingOptions {
  int max_vars = 1;
  std::optional<int> k;   // padding length; defaults to the signature's max arity
  bool standalone = false;  // add a rule generator: answer sets = safe valid rules
  bool with_defs = true;    // emit head_var/body_var defining rules
  int max_body = 3;         // body bound for the standalone generator
};

// A ground answer-set program that prunes exactly the unsafe rules of a rule
// space. The text form is byte-deterministic for fixed inputs; the structured
// maps drive the native evaluator.
struct EncodingDoc {
  Signature signature;
  int max_vars = 0;
  int k = 1;
  bool standalone = false;
  bool with_defs = true;
  int max_body = 0;

  std::vector<std::string> header;      // comment lines
  std::vector<std::string> fact_lines;  // ground facts, family by family
  std::vector<std::string> rule_lines;  // defining rules, pruning rules, generator

  std::map<Tuple, Tuple> padded;          // raw tuple (arity >= 2) -> left-padded
  std::map<Tuple, Tuple> sorted_of;       // padded tuple -> ascending
  std::set<std::pair<int, Tuple>> var_member;    // (var, tuple)
  std::set<std::pair<Tuple, int>> skipped_facts; // (sorted padded tuple, var)
  std::set<std::pair<Tuple, Tuple>> lower_facts; // (smaller, larger), same length
};

EncodingDoc emit_encoding(const Signature& sig, const EncodingOptions& opts);

std::string to_text(const EncodingDoc& doc);
std::string render_tuple(const Tuple& t);  // "(0,2)", "(4,)", "()"

// Bottom-up evaluation of the document's pruning logic on one rule, using
// only the document's ground facts. True means the constraint fires (the rule
// is pruned). Throws Error if the rule does not fit the document's signature
// or variable bound.
bool evaluate_encoding(const Rule& r, const EncodingDoc& doc);

// $SYMBREAK_SOLVER if set, else clingo on PATH; empty string when absent.
std::string find_solver();

struct SolverCount {
  std::uint64_t models = 0;
  std::string raw_output;
};

// Runs `solver --models 0 <file>` and parses the reported model count.
SolverCount count_models(const std::string& solver, const std::string& file);

}  // namespace symbreak
