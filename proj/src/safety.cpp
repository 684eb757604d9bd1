#include "symbreak/safety.hpp"

#include <algorithm>
#include <stdexcept>

#include "symbreak/errors.hpp"

namespace symbreak {

SafetyContext SafetyContext::with_k(int k) {
  if (k < 1) throw Error("padding length must be at least 1, got " + std::to_string(k));
  return SafetyContext{k};
}

SafetyContext SafetyContext::for_rule(const Rule& r) {
  return with_k(std::max(1, r.max_arity()));
}

SafetyContext SafetyContext::for_signature(int max_arity) {
  return with_k(std::max(1, max_arity));
}

std::vector<Variable> ordered_vars(const Literal& l) {
  std::vector<Variable> out = l.args();
  std::stable_sort(out.begin(), out.end());
  return out;
}

PaddedTuple pre_pad(const Literal& l, const SafetyContext& ctx) {
  const auto sorted = ordered_vars(l);
  const int pad = std::max(0, ctx.k - static_cast<int>(sorted.size()));
  PaddedTuple out;
  out.vars.assign(static_cast<std::size_t>(pad), Variable{0});
  out.vars.insert(out.vars.end(), sorted.begin(), sorted.end());
  return out;
}

namespace {

void require_comparable(const Literal& l) {
  if (l.arity() < 2)
    throw std::invalid_argument("literal " + l.pred().name +
                                " has arity < 2 and does not take part in the ordering");
}

// Body literals of arity >= 2 grouped by equal padded tuple, groups ascending.
// Equal tuples never witness each other, so the sweep in unsafe_scan only has
// to track variables seen in strictly earlier groups.
struct OrderedBody {
  std::vector<PaddedTuple> tuples;
  std::vector<std::vector<const Literal*>> groups;
};

OrderedBody group_body(const Rule& r, const SafetyContext& ctx) {
  std::vector<std::pair<PaddedTuple, const Literal*>> entries;
  for (const auto& l : r.body())
    if (l.arity() >= 2) entries.emplace_back(pre_pad(l, ctx), &l);
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  OrderedBody out;
  for (auto& [tuple, lit] : entries) {
    if (out.tuples.empty() || out.tuples.back() != tuple) {
      out.tuples.push_back(tuple);
      out.groups.emplace_back();
    }
    out.groups.back().push_back(lit);
  }
  return out;
}

std::vector<UnsafeFinding> unsafe_scan(const Rule& r, const SafetyContext& ctx, bool stop_early) {
  if (ctx.k < r.max_arity())
    throw Error("padding length " + std::to_string(ctx.k) +
                " is below the rule's largest arity " + std::to_string(r.max_arity()));
  const auto candidates = r.body_only_vars();
  const OrderedBody ordered = group_body(r, ctx);

  std::vector<UnsafeFinding> out;
  std::set<Variable> seen;
  for (std::size_t g = 0; g < ordered.groups.size(); ++g) {
    for (const Literal* l : ordered.groups[g]) {
      for (Variable v : skipped(*l, ctx)) {
        if (!candidates.contains(v)) continue;
        if (seen.contains(v)) continue;
        out.push_back({v, *l});
        if (stop_early) return out;
      }
    }
    for (const Literal* l : ordered.groups[g])
      for (Variable v : l->args()) seen.insert(v);
  }
  std::sort(out.begin(), out.end(), [](const UnsafeFinding& a, const UnsafeFinding& b) {
    if (a.var != b.var) return a.var < b.var;
    return a.literal < b.literal;
  });
  return out;
}

}  // namespace

bool lex_less(const Literal& a, const Literal& b, const SafetyContext& ctx) {
  require_comparable(a);
  require_comparable(b);
  return pre_pad(a, ctx).vars < pre_pad(b, ctx).vars;
}

std::set<Variable> skipped(const Literal& l, const SafetyContext& ctx) {
  const PaddedTuple padded = pre_pad(l, ctx);
  std::set<Variable> out;
  if (padded.vars.empty()) return out;
  const auto present = l.vars();
  const int lo = padded.vars.front().index;
  const int hi = padded.vars.back().index;
  for (int i = lo + 1; i < hi; ++i)
    if (!present.contains(Variable{i})) out.insert(Variable{i});
  return out;
}

bool is_witnessed(const Rule& r, Variable v, const Literal& l1, const SafetyContext& ctx) {
  require_comparable(l1);
  if (std::find(r.body().begin(), r.body().end(), l1) == r.body().end())
    throw std::invalid_argument("literal " + l1.pred().name + " is not in the rule body");
  if (!skipped(l1, ctx).contains(v))
    throw std::invalid_argument("variable " + var_name(v) + " is not skipped by the literal");
  for (const auto& l2 : r.body()) {
    if (l2.arity() < 2) continue;
    if (l2.vars().contains(v) && lex_less(l2, l1, ctx)) return true;
  }
  return false;
}

std::vector<UnsafeFinding> unsafe_findings(const Rule& r, const SafetyContext& ctx) {
  return unsafe_scan(r, ctx, false);
}

std::set<Variable> unsafe_vars(const Rule& r, const SafetyContext& ctx) {
  std::set<Variable> out;
  for (const auto& f : unsafe_findings(r, ctx)) out.insert(f.var);
  return out;
}

bool is_safe(const Rule& r, const SafetyContext& ctx) {
  return unsafe_scan(r, ctx, true).empty();
}

}  // namespace symbreak
