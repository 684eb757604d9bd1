#pragma once

// Shared helpers for the test binaries: independent re-implementations of the
// core predicates (different algorithms on purpose, used as oracles), naive
// brute-force searches, and fixed-seed random generators.

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "symbreak/enumerate.hpp"
#include "symbreak/errors.hpp"
#include "symbreak/parser.hpp"
#include "symbreak/rule.hpp"
#include "symbreak/safety.hpp"
#include "symbreak/variant.hpp"

namespace testsupport {

using namespace symbreak;

inline Rule R(const std::string& text) { return parse_rule(text); }

inline std::mt19937_64 fixed_rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline int pick(std::mt19937_64& rng, int lo, int hi) {  // inclusive bounds
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// ---- independent safety oracle -------------------------------------------
// The production code sorts first and then pads; here we pad the raw tuple and
// sort the whole thing, and do plain quadratic witness scans.

inline std::vector<int> oracle_padded(const Literal& l, int k) {
  std::vector<int> t;
  for (int i = l.pred().arity; i < std::max(k, l.pred().arity); ++i) t.push_back(0);
  for (Variable v : l.args()) t.push_back(v.index);
  std::sort(t.begin(), t.end());
  return t;
}

inline bool oracle_lex_less(const Literal& a, const Literal& b, int k) {
  return oracle_padded(a, k) < oracle_padded(b, k);
}

inline bool oracle_contains(const Literal& l, Variable v) {
  for (Variable a : l.args())
    if (a == v) return true;
  return false;
}

inline std::set<Variable> oracle_skipped(const Literal& l, int k) {
  std::set<Variable> out;
  const auto t = oracle_padded(l, k);
  for (int v = t.front() + 1; v < t.back(); ++v)
    if (!oracle_contains(l, Variable{v})) out.insert(Variable{v});
  return out;
}

inline std::set<Variable> oracle_unsafe_vars(const Rule& r, int k) {
  std::vector<Literal> big;
  for (const auto& l : r.body())
    if (l.pred().arity >= 2) big.push_back(l);
  std::set<Variable> out;
  for (Variable v : r.body_only_vars()) {
    for (const auto& l : big) {
      if (!oracle_skipped(l, k).count(v)) continue;
      bool witnessed = false;
      for (const auto& w : big)
        if (oracle_lex_less(w, l, k) && oracle_contains(w, v)) witnessed = true;
      if (!witnessed) {
        out.insert(v);
        break;
      }
    }
  }
  return out;
}

inline bool oracle_is_safe(const Rule& r, int k) { return oracle_unsafe_vars(r, k).empty(); }

// ---- brute-force body-variant search -------------------------------------
// Tries every bijection between the body-only variable sets; the head stays
// fixed. Returns the first witness in image order, which is the
// lexicographically smallest one.

inline std::optional<Renaming> brute_force_variant(const Rule& a, const Rule& b) {
  if (a.head() != b.head()) return std::nullopt;
  if (a.body().size() != b.body().size()) return std::nullopt;
  const auto sa = a.body_only_vars(), sb = b.body_only_vars();
  if (sa.size() != sb.size()) return std::nullopt;
  const std::vector<Variable> domain(sa.begin(), sa.end());
  std::vector<Variable> image(sb.begin(), sb.end());
  do {
    std::map<Variable, Variable> m;
    for (std::size_t i = 0; i < domain.size(); ++i) m[domain[i]] = image[i];
    const Renaming sigma(m);
    std::vector<Literal> renamed;
    for (const auto& l : a.body()) renamed.push_back(sigma(l));
    std::sort(renamed.begin(), renamed.end());
    if (renamed == b.body()) return sigma;
  } while (std::next_permutation(image.begin(), image.end()));
  return std::nullopt;
}

// Brute-force rule isomorphism: any bijection over all variables, head
// included. Used to check normalize() only renames.
inline bool brute_force_isomorphic(const Rule& a, const Rule& b) {
  if (a.body().size() != b.body().size()) return false;
  const auto va = a.vars(), vb = b.vars();
  if (va.size() != vb.size()) return false;
  const std::vector<Variable> domain(va.begin(), va.end());
  std::vector<Variable> image(vb.begin(), vb.end());
  do {
    std::map<Variable, Variable> m;
    for (std::size_t i = 0; i < domain.size(); ++i) m[domain[i]] = image[i];
    const Renaming sigma(m);
    if (sigma(a.head()) != b.head()) continue;
    std::vector<Literal> renamed;
    for (const auto& l : a.body()) renamed.push_back(sigma(l));
    std::sort(renamed.begin(), renamed.end());
    if (renamed == b.body()) return true;
  } while (std::next_permutation(image.begin(), image.end()));
  return false;
}

// Straight-line revalidation of the structural rule invariants.
inline bool oracle_valid(const Rule& r) {
  if (r.body().empty()) return false;
  if (!r.head().arity_consistent()) return false;
  for (const auto& l : r.body())
    if (!l.arity_consistent()) return false;
  std::map<Variable, int> occurrences;
  for (Variable v : r.head().args()) ++occurrences[v];
  std::set<Variable> in_body;
  for (const auto& l : r.body())
    for (Variable v : l.args()) {
      ++occurrences[v];
      in_body.insert(v);
    }
  for (Variable v : r.head().args())
    if (!in_body.count(v)) return false;
  for (const auto& [v, n] : occurrences)
    if (n < 2) return false;
  const auto head_set = r.head().vars();
  for (int i = 0; i < static_cast<int>(head_set.size()); ++i)
    if (!head_set.count(Variable{i})) return false;
  int next = 0;
  for (const auto& [v, n] : occurrences)
    if (v.index != next++) return false;
  return true;
}

// ---- naive space generator -----------------------------------------------
// Every subset of the literal universe up to max_body, filtered by validate.
// Only usable for universes of at most ~20 literals.

inline std::vector<Rule> naive_enumerate(const SpaceConfig& cfg) {
  const auto universe = literal_universe(cfg);
  if (universe.size() > 22) throw Error("naive_enumerate: universe too large");
  std::vector<Variable> head_args;
  for (int i = 0; i < cfg.signature.head().arity; ++i) head_args.push_back(Variable{i});
  const Literal head(cfg.signature.head(), head_args);

  std::set<Rule> found;
  const std::uint32_t masks = 1u << universe.size();
  for (std::uint32_t mask = 1; mask < masks; ++mask) {
    if (std::popcount(mask) > cfg.max_body) continue;
    std::vector<Literal> body;
    for (std::size_t i = 0; i < universe.size(); ++i)
      if (mask & (1u << i)) body.push_back(universe[i]);
    Rule r(head, body);
    if (is_valid(r)) found.insert(r);
  }
  return {found.begin(), found.end()};
}

// ---- random generators ---------------------------------------------------

inline Literal random_literal(std::mt19937_64& rng, const std::vector<PredicateSym>& pool,
                              int max_vars) {
  const PredicateSym& p = pool[static_cast<std::size_t>(pick(rng, 0, int(pool.size()) - 1))];
  std::vector<Variable> args;
  for (int i = 0; i < p.arity; ++i) args.push_back(Variable{pick(rng, 0, max_vars - 1)});
  return Literal(p, std::move(args));
}

// Rejection-samples a valid rule; head is head_pred(A, B, ...).
inline Rule random_valid_rule(std::mt19937_64& rng, const Signature& sig, int max_body,
                              int max_vars) {
  std::vector<Variable> head_args;
  for (int i = 0; i < sig.head().arity; ++i) head_args.push_back(Variable{i});
  const Literal head(sig.head(), head_args);
  for (;;) {
    std::vector<Literal> body;
    const int n = pick(rng, 1, max_body);
    for (int i = 0; i < n; ++i) body.push_back(random_literal(rng, sig.body(), max_vars));
    Rule r(head, body);
    if (is_valid(r)) return r;
  }
}

// Applies a random permutation of the body-only variables of r (head fixed),
// yielding a guaranteed body variant. Returns the renamed rule.
inline Rule random_body_shuffle(std::mt19937_64& rng, const Rule& r) {
  const auto only = r.body_only_vars();
  std::vector<Variable> from(only.begin(), only.end()), to = from;
  std::shuffle(to.begin(), to.end(), rng);
  std::map<Variable, Variable> m;
  for (std::size_t i = 0; i < from.size(); ++i) m[from[i]] = to[i];
  return apply_renaming(r, Renaming(m));
}

// ---- literal-order lemma instances ---------------------------------------

// Swap instance: literals l1, l2 (arity >= 2), x1 in l1, x2 in l2 but not in
// l1, B <= x2 < x1 < y, theta = {x1 -> x2, x2 -> y}, and l1 < l2 under k.
// The claim under test: l1 theta < l2 theta. x2 is kept off the padding
// variable A, matching how the swap is used (the moved variable is never the
// smallest one in a valid rule).
struct SwapInstance {
  Literal l1, l2;
  Renaming theta;
  SafetyContext ctx{2};
};

inline SwapInstance random_swap_instance(std::mt19937_64& rng) {
  const std::vector<PredicateSym> pool{{"p", 2}, {"p", 3}, {"q", 2}, {"q", 4}};
  for (;;) {
    const Literal l1 = random_literal(rng, pool, 7);
    const Literal l2 = random_literal(rng, pool, 7);
    const int k = std::max({l1.pred().arity, l2.pred().arity, pick(rng, 2, 6)});
    const SafetyContext ctx{k};
    if (!lex_less(l1, l2, ctx)) continue;
    std::vector<Variable> x1s, x2s;
    for (Variable v : l2.vars())
      if (v.index >= 1 && !l1.vars().count(v)) x2s.push_back(v);
    if (x2s.empty()) continue;
    const Variable x2 = x2s[static_cast<std::size_t>(pick(rng, 0, int(x2s.size()) - 1))];
    for (Variable v : l1.vars())
      if (v.index > x2.index) x1s.push_back(v);
    if (x1s.empty()) continue;
    const Variable x1 = x1s[static_cast<std::size_t>(pick(rng, 0, int(x1s.size()) - 1))];
    const Variable y{x1.index + pick(rng, 1, 3)};
    return SwapInstance{l1, l2, Renaming({{x1, x2}, {x2, y}}), ctx};
  }
}

inline bool swap_claim_holds(const SwapInstance& inst) {
  return lex_less(inst.theta(inst.l1), inst.theta(inst.l2), inst.ctx);
}

// Shift instance: a body whose variable set is {0..m} minus one interior gap
// g >= 1, and sigma shifting every variable above g down by one. The claim
// under test: sigma preserves the literal order on every arity >= 2 pair.
// The gap stays off variable A for the same reason as above.
struct ShiftInstance {
  std::vector<Literal> body;
  Renaming sigma;
  SafetyContext ctx{2};
};

inline ShiftInstance random_shift_instance(std::mt19937_64& rng) {
  const std::vector<PredicateSym> pool{{"p", 2}, {"p", 3}, {"q", 2}};
  for (;;) {
    const int m = pick(rng, 2, 6);  // variables 0..m with one gap
    const int gap = pick(rng, 1, m - 1);
    const int n = pick(rng, 2, 4);
    std::vector<Literal> body;
    std::set<Variable> used;
    for (int i = 0; i < n; ++i) {
      Literal l = random_literal(rng, pool, m + 1);
      bool ok = true;
      for (Variable v : l.vars()) ok &= v.index != gap;
      if (!ok) {
        --i;
        continue;
      }
      for (Variable v : l.vars()) used.insert(v);
      body.push_back(l);
    }
    std::set<Variable> wanted;
    for (int v = 0; v <= m; ++v)
      if (v != gap) wanted.insert(Variable{v});
    if (used != wanted) continue;
    const int k = std::max(3, pick(rng, 3, 5));
    std::map<Variable, Variable> shift;
    for (int v = gap + 1; v <= m; ++v) shift[Variable{v}] = Variable{v - 1};
    return ShiftInstance{std::move(body), Renaming(shift), SafetyContext{k}};
  }
}

inline bool shift_claim_holds(const ShiftInstance& inst) {
  for (const auto& l1 : inst.body)
    for (const auto& l2 : inst.body) {
      if (l1.pred().arity < 2 || l2.pred().arity < 2) continue;
      if (!lex_less(l1, l2, inst.ctx)) continue;
      if (!lex_less(inst.sigma(l1), inst.sigma(l2), inst.ctx)) return false;
    }
  return true;
}

}  // namespace testsupport
