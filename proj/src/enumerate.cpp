#include "symbreak/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <sstream>
#include <thread>

#include "symbreak/errors.hpp"

namespace symbreak {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

int SpaceConfig::resolved_k() const {
  return k.value_or(std::max(1, signature.max_arity()));
}

SafetyContext SpaceConfig::context() const { return SafetyContext::with_k(resolved_k()); }

void SpaceConfig::check() const {
  if (max_body < 1) throw Error("max_body must be at least 1");
  const int head_arity = signature.head().arity;
  if (max_vars < std::max(1, head_arity))
    throw Error("max_vars must cover the head arity (need at least " +
                std::to_string(std::max(1, head_arity)) + ")");
  if (resolved_k() < signature.max_arity())
    throw Error("padding length " + std::to_string(resolved_k()) +
                " is below the signature's largest arity " +
                std::to_string(signature.max_arity()));
  if (jobs < 1) throw Error("jobs must be at least 1");
}

std::vector<Literal> literal_universe(const SpaceConfig& cfg) {
  std::vector<Literal> out;
  for (const auto& pred : cfg.signature.body()) {
    std::vector<Variable> args(static_cast<std::size_t>(pred.arity), Variable{0});
    // Row-major sweep over all tuples; with predicates sorted by name this
    // already yields canonical literal order.
    auto emit = [&](auto&& self, int pos) -> void {
      if (pos == pred.arity) {
        out.emplace_back(pred, args);
        return;
      }
      for (int v = 0; v < cfg.max_vars; ++v) {
        if (!cfg.allow_repeated_vars) {
          bool used = false;
          for (int i = 0; i < pos; ++i) used |= args[static_cast<std::size_t>(i)].index == v;
          if (used) continue;
        }
        args[static_cast<std::size_t>(pos)] = Variable{v};
        self(self, pos + 1);
      }
    };
    emit(emit, 0);
  }
  return out;
}

namespace {

Literal make_head(const Signature& sig) {
  std::vector<Variable> args;
  for (int i = 0; i < sig.head().arity; ++i) args.push_back(Variable{i});
  return Literal(sig.head(), std::move(args));
}

// Depth-first walk over index subsets starting at first index `first`.
void walk_from(const Literal& head, const std::vector<Literal>& universe, int max_body,
               std::size_t first, std::vector<Literal>& body,
               const std::function<void(const Rule&)>& fn) {
  body.push_back(universe[first]);
  Rule candidate(head, body);
  if (is_valid(candidate)) fn(candidate);
  if (static_cast<int>(body.size()) < max_body)
    for (std::size_t next = first + 1; next < universe.size(); ++next)
      walk_from(head, universe, max_body, next, body, fn);
  body.pop_back();
}

}  // namespace

void for_each_rule(const SpaceConfig& cfg, const std::function<void(const Rule&)>& fn) {
  cfg.check();
  const auto universe = literal_universe(cfg);
  const Literal head = make_head(cfg.signature);
  std::vector<Literal> body;
  for (std::size_t first = 0; first < universe.size(); ++first)
    walk_from(head, universe, cfg.max_body, first, body, fn);
}

std::vector<Rule> enumerate_rules(const SpaceConfig& cfg) {
  cfg.check();
  const auto universe = literal_universe(cfg);
  const Literal head = make_head(cfg.signature);

  if (cfg.jobs <= 1) {
    std::vector<Rule> out;
    std::vector<Literal> body;
    for (std::size_t first = 0; first < universe.size(); ++first)
      walk_from(head, universe, cfg.max_body, first, body, [&](const Rule& r) { out.push_back(r); });
    return out;
  }

  // One task per first-literal index, pulled by a worker pool. Chunks are
  // concatenated in index order, so the stream matches the sequential one.
  std::vector<std::vector<Rule>> chunks(universe.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    std::vector<Literal> body;
    for (;;) {
      const std::size_t first = cursor.fetch_add(1);
      if (first >= universe.size()) return;
      walk_from(head, universe, cfg.max_body, first, body,
                [&](const Rule& r) { chunks[first].push_back(r); });
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(cfg.jobs, static_cast<int>(universe.size()));
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<Rule> out;
  for (auto& chunk : chunks)
    out.insert(out.end(), std::make_move_iterator(chunk.begin()),
               std::make_move_iterator(chunk.end()));
  return out;
}

namespace {

std::string profile_key(Variable v, const Rule& r) {
  std::map<std::pair<std::string, int>, int> counts;
  for (const auto& l : r.body())
    for (std::size_t i = 0; i < l.args().size(); ++i)
      if (l.args()[i] == v) ++counts[{l.pred().name, static_cast<int>(i)}];
  std::ostringstream out;
  for (const auto& [key, n] : counts) out << key.first << "." << key.second << "x" << n << ";";
  return out.str();
}

// Invariant under body-only renamings: rules in one variant class always get
// the same key, so classes never straddle buckets.
std::string fingerprint(const Rule& r) {
  std::ostringstream out;
  out << r.body().size() << "|";
  std::map<std::pair<std::string, int>, int> preds;
  for (const auto& l : r.body()) ++preds[{l.pred().name, l.pred().arity}];
  for (const auto& [p, n] : preds) out << p.first << "/" << p.second << "x" << n << ",";
  out << "|";
  for (Variable hv : r.head_vars()) out << "[" << profile_key(hv, r) << "]";
  out << "|";
  std::multiset<std::string> body_profiles;
  for (Variable v : r.body_only_vars()) body_profiles.insert(profile_key(v, r));
  for (const auto& p : body_profiles) out << "[" << p << "]";
  return out.str();
}

struct ClassInfo {
  Rule rep;
  std::uint64_t size = 0;
  std::uint64_t safe = 0;
};

}  // namespace

SpaceStats space_stats(const SpaceConfig& cfg, bool with_classes, const OracleLimits& limits,
                       std::uint64_t class_cap) {
  cfg.check();
  const SafetyContext ctx = cfg.context();
  SpaceStats stats;

  auto t0 = Clock::now();
  std::vector<Rule> rules = enumerate_rules(cfg);
  stats.gen_ms = ms_since(t0);
  stats.total = rules.size();

  auto t1 = Clock::now();
  std::vector<char> safe_flags(rules.size());
  if (cfg.jobs <= 1) {
    for (std::size_t i = 0; i < rules.size(); ++i) safe_flags[i] = is_safe(rules[i], ctx) ? 1 : 0;
  } else {
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = cursor.fetch_add(256);
        if (i >= rules.size()) return;
        const std::size_t end = std::min(rules.size(), i + 256);
        for (std::size_t j = i; j < end; ++j) safe_flags[j] = is_safe(rules[j], ctx) ? 1 : 0;
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < cfg.jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (char f : safe_flags) stats.safe += f;
  stats.prune_ms = ms_since(t1);

  if (!with_classes) return stats;
  if (stats.total > class_cap)
    throw CapError("space has " + std::to_string(stats.total) +
                   " rules, class partitioning bound is " + std::to_string(class_cap));

  auto t2 = Clock::now();
  std::map<std::string, std::vector<ClassInfo>> buckets;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    auto& bucket = buckets[fingerprint(rules[i])];
    ClassInfo* home = nullptr;
    for (auto& cls : bucket)
      if (is_body_variant(rules[i], cls.rep, limits)) {
        home = &cls;
        break;
      }
    if (!home) {
      bucket.push_back({rules[i], 0, 0});
      home = &bucket.back();
    }
    ++home->size;
    if (safe_flags[i]) ++home->safe;
  }

  std::uint64_t classes = 0, min_safe = 0, max_safe = 0;
  bool first = true;
  for (const auto& [key, bucket] : buckets)
    for (const auto& cls : bucket) {
      ++classes;
      min_safe = first ? cls.safe : std::min(min_safe, cls.safe);
      max_safe = first ? cls.safe : std::max(max_safe, cls.safe);
      first = false;
    }
  stats.classes = classes;
  stats.min_safe_per_class = min_safe;
  stats.max_safe_per_class = max_safe;
  stats.prune_ms += ms_since(t2);

  if (classes > 0 && min_safe == 0)
    throw SoundnessError("a variant class has no safe member in space over head " +
                         cfg.signature.head().name + "/" +
                         std::to_string(cfg.signature.head().arity) + " with max_body " +
                         std::to_string(cfg.max_body) + ", max_vars " +
                         std::to_string(cfg.max_vars));
  return stats;
}

std::vector<BenchRow> benchmark_scaling(const SpaceConfig& base, int vars_from, int vars_to,
                                        double budget_ms) {
  if (vars_from > vars_to) throw Error("empty max_vars range");
  std::vector<BenchRow> rows;
  const auto start = Clock::now();
  for (int mv = vars_from; mv <= vars_to; ++mv) {
    SpaceConfig cfg = base;
    cfg.max_vars = mv;
    cfg.jobs = 1;  // timing comparison, keep both passes single-threaded
    cfg.check();
    const SafetyContext ctx = cfg.context();

    BenchRow row;
    row.vars = mv;
    auto t0 = Clock::now();
    for_each_rule(cfg, [&](const Rule& r) {
      if (is_safe(r, ctx)) ++row.safe;
    });
    row.gen_with_ms = ms_since(t0);
    auto t1 = Clock::now();
    for_each_rule(cfg, [&](const Rule&) { ++row.total; });
    row.gen_without_ms = ms_since(t1);

    if (!rows.empty() && row.total < rows.back().total)
      throw SoundnessError("rule space shrank when max_vars grew from " +
                           std::to_string(rows.back().vars) + " to " + std::to_string(mv));
    rows.push_back(row);
    if (budget_ms > 0 && ms_since(start) > budget_ms) break;
  }
  return rows;
}

}  // namespace symbreak
