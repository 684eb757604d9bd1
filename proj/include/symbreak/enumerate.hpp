#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "symbreak/parser.hpp"
#include "symbreak/rule.hpp"
#include "symbreak/safety.hpp"
#include "symbreak/variant.hpp"

namespace symbreak {

// A finite rule space: fixed head over the signature's head predicate with
// variables 0..arity-1, bodies drawn from all literals over the body
// predicates with variables 0..max_vars-1.
struct SpaceConfig {
  Signature signature;
  int max_body = 1;
  int max_vars = 1;
  std::optional<int> k;  // padding length; defaults to the signature's max arity
  bool allow_repeated_vars = true;  // p(A,A) in the universe, or distinct args only
  int jobs = 1;

  int resolved_k() const;
  SafetyContext context() const;
  void check() const;  // throws Error on an inconsistent configuration
};

// All body literals the space can use, in canonical order.
std::vector<Literal> literal_universe(const SpaceConfig& cfg);

// Streams every valid rule of the space in a fixed order: bodies are index
// sets over the canonical literal universe, visited in depth-first prefix
// order, and a rule is emitted when it passes validate(). Single-threaded.
void for_each_rule(const SpaceConfig& cfg, const std::function<void(const Rule&)>& fn);

// Materializes the stream. With cfg.jobs > 1 the universe is partitioned by
// first literal and the chunks are concatenated in order, so the result is
// identical to the sequential stream.
std::vector<Rule> enumerate_rules(const SpaceConfig& cfg);

struct SpaceStats {
  std::uint64_t total = 0;  // valid rules
  std::uint64_t safe = 0;
  std::optional<std::uint64_t> classes;  // variant classes, when requested
  std::optional<std::uint64_t> min_safe_per_class;
  std::optional<std::uint64_t> max_safe_per_class;
  double gen_ms = 0;
  double prune_ms = 0;  // safety checks, plus class partitioning when requested
};

// Counts the space and optionally partitions it into variant classes using
// the exact oracle behind conservative fingerprint buckets. Raises CapError
// when the space exceeds class_cap rules and classes were requested, and
// SoundnessError if some class ends up without a safe member.
SpaceStats space_stats(const SpaceConfig& cfg, bool with_classes,
                       const OracleLimits& limits = {}, std::uint64_t class_cap = 2000000);

struct BenchRow {
  int vars;
  std::uint64_t total = 0;
  std::uint64_t safe = 0;
  double gen_with_ms = 0;     // generate and drop unsafe rules as they complete
  double gen_without_ms = 0;  // generate the full space, no filtering
};

// Sweeps max_vars over [vars_from, vars_to] on copies of `base`. Each row
// times two single-threaded streaming passes over the space: one rejecting
// unsafe rules the moment they are completed, one keeping everything. A
// positive budget_ms stops the sweep early once exceeded; completed rows are
// returned. Raises SoundnessError if the space ever shrinks as max_vars grows.
std::vector<BenchRow> benchmark_scaling(const SpaceConfig& base, int vars_from, int vars_to,
                                        double budget_ms = 0);

}  // namespace symbreak
