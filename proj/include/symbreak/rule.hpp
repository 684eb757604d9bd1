#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace symbreak {

// A rule variable. Index 0 renders as A, 1 as B, ..., 25 as Z, then V26, V27, ...
struct Variable {
  int index = 0;
  friend constexpr auto operator<=>(const Variable&, const Variable&) = default;
};

std::string var_name(Variable v);
std::optional<Variable> var_from_name(std::string_view name);

struct PredicateSym {
  std::string name;
  int arity = 0;
  friend auto operator<=>(const PredicateSym&, const PredicateSym&) = default;
};

// Lowercase letter followed by letters, digits or underscores.
bool is_valid_pred_name(std::string_view name);

class Literal {
public:
  Literal(PredicateSym pred, std::vector<Variable> args);
  // Convenience: arity taken from the argument count.
  Literal(std::string name, std::vector<Variable> args);

  const PredicateSym& pred() const { return pred_; }
  const std::vector<Variable>& args() const { return args_; }
  int arity() const { return pred_.arity; }
  bool arity_consistent() const { return pred_.arity == static_cast<int>(args_.size()); }
  std::set<Variable> vars() const;

  friend bool operator==(const Literal&, const Literal&) = default;
  // Canonical literal order: by name, then argument tuple.
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b);

private:
  PredicateSym pred_;
  std::vector<Variable> args_;
};

// A definite rule. The body is kept sorted in canonical literal order with
// duplicates removed, so rules that differ only in body listing order or
// repetition compare equal.
class Rule {
public:
  Rule(Literal head, std::vector<Literal> body);

  const Literal& head() const { return head_; }
  const std::vector<Literal>& body() const { return body_; }
  std::vector<Literal> body_geq2() const;  // body literals of declared arity >= 2

  std::set<Variable> vars() const;
  std::set<Variable> head_vars() const;
  std::set<Variable> body_vars() const;
  std::set<Variable> body_only_vars() const;
  int max_arity() const;  // over head and body declared arities

  friend bool operator==(const Rule&, const Rule&) = default;
  friend std::strong_ordering operator<=>(const Rule& a, const Rule& b);

private:
  Literal head_;
  std::vector<Literal> body_;
};

// A set of rules, kept sorted with duplicates removed.
class Hypothesis {
public:
  Hypothesis() = default;
  explicit Hypothesis(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;

private:
  std::vector<Rule> rules_;
};

// A finite injective variable mapping. Identity entries are dropped, so the
// empty renaming is the identity. Application is simultaneous.
class Renaming {
public:
  Renaming() = default;
  // Throws std::invalid_argument if two domain variables share an image.
  explicit Renaming(const std::map<Variable, Variable>& mapping);

  Variable operator()(Variable v) const;
  Literal operator()(const Literal& l) const;

  const std::map<Variable, Variable>& entries() const { return map_; }
  bool empty() const { return map_.empty(); }
  Renaming inverse() const;
  // Composition: (a.then(b))(v) == b(a(v)).
  Renaming then(const Renaming& next) const;
  bool fixes(const std::set<Variable>& vars) const;
  // True iff the image of `vars` under this map has no collisions.
  bool injective_on(const std::set<Variable>& vars) const;

  friend bool operator==(const Renaming&, const Renaming&) = default;

private:
  std::map<Variable, Variable> map_;
};

enum class ViolationKind {
  ArityMismatch,      // literal argument count differs from declared arity
  EmptyBody,
  NotHeadConnected,   // some head variable never occurs in the body
  SingletonVariable,  // variable with a single occurrence across the rule
  HeadVarsNotSmallest,
  VariableGap,        // variable indices are not contiguous from 0
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

const char* violation_kind_name(ViolationKind k);

// Checks the structural invariants a rule must satisfy before any of the
// ordering or safety machinery applies to it. Arity mismatches short-circuit:
// if any literal is malformed only those are reported.
std::vector<Violation> validate(const Rule& r);
bool is_valid(const Rule& r);

// Renames variables so head variables occupy 0..h-1 (in order of first
// occurrence in the head) and the remaining variables fill h..m-1 in order of
// first occurrence across the sorted body. Valid rules are returned unchanged.
// Throws NormalizeError when the rule is broken beyond renaming (arity
// mismatch, empty body, singleton variable, head variable missing from body).
Rule normalize(const Rule& r);

// Applies a renaming to every literal of the rule. Throws
// std::invalid_argument if the renaming is not injective on vars(r).
Rule apply_renaming(const Rule& r, const Renaming& sigma);

// Unchecked simultaneous substitution, for tests and ad-hoc rewriting.
Literal substitute(const Literal& l, const std::map<Variable, Variable>& mapping);

}  // namespace symbreak
