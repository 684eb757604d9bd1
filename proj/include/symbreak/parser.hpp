#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "symbreak/rule.hpp"

namespace symbreak {

// A head predicate plus a non-empty pool of body predicates. All names are
// distinct, the head's included.
class Signature {
public:
  Signature(PredicateSym head, std::vector<PredicateSym> body);

  const PredicateSym& head() const { return head_; }
  const std::vector<PredicateSym>& body() const { return body_; }  // sorted by name
  const PredicateSym* find(std::string_view name) const;
  int max_arity() const;  // over head and body predicates

  friend bool operator==(const Signature&, const Signature&) = default;

private:
  PredicateSym head_;
  std::vector<PredicateSym> body_;
};

// Two input forms. Line format, one predicate per line with "%" comments:
//
//   head zendo/1
//   body piece/2
//   body size/2
//
// or a JSON document {"head": {"name": "zendo", "arity": 1},
// "body": [{"name": "piece", "arity": 2}, ...]}, detected by a leading '{'.
Signature parse_signature(std::string_view text);

// Renders the line format, body predicates sorted by name, trailing newline.
std::string render_signature(const Signature& s);

// Parses a single rule, e.g. "zendo(A) :- piece(A,B), blue(B), piece(A,B)."
// Accepts ":-" or "<-" as the neck and "%" line comments. A bare fact "h." or
// "h :- ." is accepted as an empty-body rule (validate() rejects it later).
Rule parse_rule(std::string_view text);

// Parses a sequence of rules, one per '.'-terminated statement. Blank lines
// and comments are skipped.
std::vector<Rule> parse_rules(std::string_view text);

std::string render_literal(const Literal& l);
std::string render_rule(const Rule& r);
std::string render_renaming(const Renaming& sigma);  // "{B->C, C->B}"
std::string render_var_set(const std::set<Variable>& vs);  // "{B,C}"

}  // namespace symbreak
