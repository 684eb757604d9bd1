#pragma once

#include <set>
#include <vector>

#include "symbreak/rule.hpp"

namespace symbreak {

// Padding length for literal comparison. All comparisons within one rule or
// rule space must share a context whose k is at least the largest arity in
// play; the factories below enforce that.
struct SafetyContext {
  int k = 1;

  static SafetyContext with_k(int k);                // throws Error if k < 1
  static SafetyContext for_rule(const Rule& r);      // tightest: max(1, max arity)
  static SafetyContext for_signature(int max_arity);  // max(1, max_arity)
};

// A variable tuple prefix-padded with the minimal variable (index 0).
struct PaddedTuple {
  std::vector<Variable> vars;
  friend auto operator<=>(const PaddedTuple&, const PaddedTuple&) = default;
};

// Argument tuple sorted ascending (stable, so duplicates keep their order).
std::vector<Variable> ordered_vars(const Literal& l);

// Sorted argument tuple left-padded with Variable{0} to length max(k, arity).
PaddedTuple pre_pad(const Literal& l, const SafetyContext& ctx);

// Strict lexicographic order on padded sorted tuples. Both literals must have
// declared arity >= 2; comparison is undefined (and rejected) otherwise.
bool lex_less(const Literal& a, const Literal& b, const SafetyContext& ctx);

// Variables strictly between the first and last entry of the padded sorted
// tuple of l that do not occur in l.
std::set<Variable> skipped(const Literal& l, const SafetyContext& ctx);

// True iff some body literal of arity >= 2 strictly below l1 contains v.
// Requires l1 to be a body literal of r with arity >= 2 and v in skipped(l1).
bool is_witnessed(const Rule& r, Variable v, const Literal& l1, const SafetyContext& ctx);

// One unsafety certificate: v is skipped by `literal` and no smaller body
// literal mentions v.
struct UnsafeFinding {
  Variable var;
  Literal literal;
  friend bool operator==(const UnsafeFinding&, const UnsafeFinding&) = default;
};

// All findings for body-only variables, sorted by (var, literal). Head
// variables never produce findings. Requires ctx.k >= max arity of r.
std::vector<UnsafeFinding> unsafe_findings(const Rule& r, const SafetyContext& ctx);

std::set<Variable> unsafe_vars(const Rule& r, const SafetyContext& ctx);
bool is_safe(const Rule& r, const SafetyContext& ctx);

}  // namespace symbreak
