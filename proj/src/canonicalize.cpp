#include "symbreak/canonicalize.hpp"

#include <algorithm>
#include <map>

#include "symbreak/errors.hpp"
#include "symbreak/parser.hpp"

namespace symbreak {

namespace {

// The literal whose skip of x drives the next renaming: minimal w.r.t. the
// padded-tuple order, ties broken by canonical literal order. If any literal
// skips x unwitnessed, this one does.
Literal pick_pivot(const Rule& r, Variable x, const SafetyContext& ctx) {
  const Literal* best = nullptr;
  PaddedTuple best_tuple;
  for (const auto& l : r.body()) {
    if (l.arity() < 2) continue;
    if (!skipped(l, ctx).contains(x)) continue;
    PaddedTuple tuple = pre_pad(l, ctx);
    if (!best || tuple < best_tuple || (tuple == best_tuple && l < *best)) {
      best = &l;
      best_tuple = std::move(tuple);
    }
  }
  if (!best) throw SoundnessError("no literal skips the unsafe variable " + var_name(x));
  return *best;
}

}  // namespace

CanonTrace safe_variant(const Rule& r, const SafetyContext& ctx) {
  // Only violations that break the renaming construction are fatal: the step
  // permutation assumes contiguous indices 0..m-1 with head variables at the
  // bottom, and skipped sets are meaningless under inconsistent arities.
  // Singletons and body-less head variables are harmless here.
  for (const auto& v : validate(r)) {
    switch (v.kind) {
      case ViolationKind::ArityMismatch:
      case ViolationKind::VariableGap:
      case ViolationKind::HeadVarsNotSmallest:
        throw Error("cannot canonicalize " + render_rule(r) + ": " + v.detail);
      default:
        break;
    }
  }

  CanonTrace trace{{}, r, Renaming{}};
  const int max_steps = static_cast<int>(r.vars().size());
  int prev_unsafe = -1;

  for (int step = 0; step <= max_steps; ++step) {
    const auto findings = unsafe_findings(trace.result, ctx);
    if (findings.empty()) return trace;
    if (step == max_steps)
      throw SoundnessError("renaming loop did not settle within " + std::to_string(max_steps) +
                           " steps for " + render_rule(r));

    const Variable x = findings.front().var;
    if (x.index <= prev_unsafe)
      throw SoundnessError("smallest unsafe variable did not increase at " +
                           render_rule(trace.result));
    prev_unsafe = x.index;

    const Literal pivot = pick_pivot(trace.result, x, ctx);
    const int m = static_cast<int>(trace.result.vars().size());

    // Smallest variable of the pivot above x. The pivot's padded tuple ends
    // above x (x sits strictly inside it), so this always exists.
    int k_index = -1;
    for (Variable v : pivot.vars())
      if (v.index > x.index && (k_index < 0 || v.index < k_index)) k_index = v.index;
    if (k_index < 0)
      throw SoundnessError("pivot " + render_literal(pivot) + " has no variable above " +
                           var_name(x));

    // Send x to a fresh name past the top, swap the pivot variable down into
    // x's slot, and close the gap. This is a permutation of 0..m-1.
    std::map<Variable, Variable> map;
    map[x] = Variable{m - 1};
    map[Variable{k_index}] = x;
    for (int t = k_index + 1; t <= m - 1; ++t) map[Variable{t}] = Variable{t - 1};

    const Renaming sigma(map);
    trace.result = apply_renaming(trace.result, sigma);
    trace.composed = trace.composed.then(sigma);
    trace.steps.push_back({x, pivot, sigma});
  }
  return trace;
}

CanonTrace safe_variant(const Rule& r) { return safe_variant(r, SafetyContext::for_rule(r)); }

}  // namespace symbreak
