#pragma once

#include <vector>

#include "symbreak/rule.hpp"
#include "symbreak/safety.hpp"

namespace symbreak {

// One repair step: the smallest unsafe variable, the smallest body literal
// skipping it, and the renaming applied to the whole rule.
struct CanonStep {
  Variable unsafe_var;
  Literal pivot;
  Renaming sigma;
};

struct CanonTrace {
  std::vector<CanonStep> steps;
  Rule result;
  Renaming composed;  // net simultaneous renaming, original vars to final vars
};

// Repeatedly renames body-only variables until the rule is safe. The result
// differs from the input only by a renaming of body-only variables (the
// composed renaming fixes head variables). Each step strictly increases the
// smallest unsafe variable, so at most |vars(r)| steps run; exceeding that
// bound raises SoundnessError.
//
// Requires ctx.k >= max arity, contiguous variable indices, head variables
// occupying the smallest indices, and consistent arities. Singleton variables
// and head variables missing from the body are tolerated: they never make a
// variable unsafe, so the loop treats them as inert.
CanonTrace safe_variant(const Rule& r, const SafetyContext& ctx);

// Convenience: safe_variant with the tightest context for r.
CanonTrace safe_variant(const Rule& r);

}  // namespace symbreak
