#include "symbreak/variant.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string_view>

#include "symbreak/errors.hpp"

namespace symbreak {

namespace {

// How a variable sits in a body: for every (predicate, argument position) the
// number of occurrences. Invariant under any renaming that maps the body onto
// another body, so mismatched profiles can never be paired.
using Profile = std::vector<std::pair<std::pair<std::string, int>, int>>;

Profile profile_of(Variable v, const std::vector<Literal>& body) {
  std::map<std::pair<std::string, int>, int> counts;
  for (const auto& l : body)
    for (std::size_t i = 0; i < l.args().size(); ++i)
      if (l.args()[i] == v) ++counts[{l.pred().name, static_cast<int>(i)}];
  return Profile(counts.begin(), counts.end());
}

bool bodies_equal_under(const Rule& a, const Rule& b,
                        const std::map<Variable, Variable>& assignment) {
  std::vector<Literal> mapped;
  mapped.reserve(a.body().size());
  for (const auto& l : a.body()) mapped.push_back(substitute(l, assignment));
  std::sort(mapped.begin(), mapped.end());
  return mapped == b.body();
}

struct VariantSearch {
  const Rule& a;
  const Rule& b;
  std::vector<Variable> domain;                    // body-only vars of a, ascending
  std::map<Variable, std::vector<Variable>> cand;  // per domain var, ascending
  std::map<Variable, Variable> assignment;
  std::set<Variable> used;

  bool run(std::size_t i) {
    if (i == domain.size()) return bodies_equal_under(a, b, assignment);
    const Variable v = domain[i];
    for (Variable w : cand.at(v)) {
      if (used.contains(w)) continue;
      assignment[v] = w;
      used.insert(w);
      if (run(i + 1)) return true;
      used.erase(w);
      assignment.erase(v);
    }
    return false;
  }
};

}  // namespace

std::optional<VariantWitness> is_body_variant(const Rule& a, const Rule& b,
                                              const OracleLimits& limits) {
  if (a.head() != b.head()) return std::nullopt;
  if (a.body().size() != b.body().size()) return std::nullopt;
  auto preds = [](const Rule& r) {
    std::multiset<std::pair<std::string, int>> out;
    for (const auto& l : r.body()) out.insert({l.pred().name, l.pred().arity});
    return out;
  };
  if (preds(a) != preds(b)) return std::nullopt;

  const auto dom_set = a.body_only_vars();
  const auto img_set = b.body_only_vars();
  if (dom_set.size() != img_set.size()) return std::nullopt;
  if (static_cast<int>(dom_set.size()) > limits.max_body_only_vars)
    throw CapError("rule has " + std::to_string(dom_set.size()) +
                   " body-only variables, oracle bound is " +
                   std::to_string(limits.max_body_only_vars));

  for (Variable hv : a.head_vars())
    if (profile_of(hv, a.body()) != profile_of(hv, b.body())) return std::nullopt;

  VariantSearch search{a, b, {dom_set.begin(), dom_set.end()}, {}, {}, {}};
  if (limits.use_occurrence_pruning) {
    std::map<Profile, std::vector<Variable>> by_profile;
    for (Variable w : img_set) by_profile[profile_of(w, b.body())].push_back(w);
    for (Variable v : search.domain) {
      auto it = by_profile.find(profile_of(v, a.body()));
      if (it == by_profile.end()) return std::nullopt;
      search.cand[v] = it->second;
    }
  } else {
    const std::vector<Variable> all(img_set.begin(), img_set.end());
    for (Variable v : search.domain) search.cand[v] = all;
  }

  if (!search.run(0)) return std::nullopt;
  return VariantWitness{Renaming(search.assignment)};
}

std::optional<HypothesisPairing> is_hypothesis_variant(const Hypothesis& a, const Hypothesis& b,
                                                       const OracleLimits& limits) {
  const std::size_t n = a.size();
  if (n != b.size()) return std::nullopt;

  std::vector<std::vector<std::optional<VariantWitness>>> matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    matrix[i].resize(n);
    for (std::size_t j = 0; j < n; ++j)
      matrix[i][j] = is_body_variant(a.rules()[i], b.rules()[j], limits);
  }

  std::vector<std::size_t> perm(n, n);
  std::vector<bool> used(n, false);
  auto backtrack = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || !matrix[i][j]) continue;
      perm[i] = j;
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (!backtrack(backtrack, 0)) return std::nullopt;

  HypothesisPairing out;
  out.rule_map = perm;
  for (std::size_t i = 0; i < n; ++i) out.witnesses.push_back(matrix[i][perm[i]]->sigma);
  return out;
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 0) throw Error("negative node count");
  for (auto& [u, v] : edges_) {
    if (u == v) throw Error("self-loop at node " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw Error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                  ") outside node range 0.." + std::to_string(n_ - 1));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_), 0);
  for (const auto& [u, v] : edges_) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  return deg;
}

bool Graph::has_isolated_node() const {
  const auto deg = degrees();
  return std::any_of(deg.begin(), deg.end(), [](int d) { return d == 0; });
}

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('%'); pos != std::string::npos) line.erase(pos);
    // Stream extraction into an int zeroes the target on junk, so parse
    // tokens by hand to keep malformed lines from passing as data.
    auto parse_int = [&](const std::string& tok) {
      std::size_t used = 0;
      int value = 0;
      try {
        value = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError(lineno, 1, "expected an integer, got '" + tok + "'");
      return value;
    };
    std::istringstream fields(line);
    std::string first, second, extra;
    if (!(fields >> first)) continue;
    if (n < 0) {
      n = parse_int(first);
      if (fields >> extra) throw ParseError(lineno, 1, "expected a single node count");
      continue;
    }
    if (!(fields >> second) || fields >> extra)
      throw ParseError(lineno, 1, "expected an edge 'u v'");
    edges.emplace_back(parse_int(first), parse_int(second));
  }
  if (n < 0) throw ParseError(lineno + 1, 1, "missing node count");
  return Graph(n, std::move(edges));
}

GraphRuleResult graph_to_rule(const Graph& g) {
  // Both orientations of every edge. A single orientation is not faithful:
  // the two edge lists {01,12} and {01,02} describe isomorphic 3-node paths,
  // yet edge(A,B),edge(B,C) and edge(A,B),edge(A,C) admit no renaming.
  std::vector<Literal> body;
  for (const auto& [u, v] : g.edges()) {
    body.emplace_back("edge", std::vector<Variable>{Variable{u}, Variable{v}});
    body.emplace_back("edge", std::vector<Variable>{Variable{v}, Variable{u}});
  }
  Rule rule(Literal("h", {}), std::move(body));
  return {std::move(rule), g.has_isolated_node()};
}

bool graphs_isomorphic(const Graph& a, const Graph& b, int max_nodes) {
  if (a.node_count() != b.node_count()) return false;
  if (a.edges().size() != b.edges().size()) return false;
  if (a.node_count() > max_nodes)
    throw CapError("brute-force isomorphism bound is " + std::to_string(max_nodes) + " nodes");
  auto da = a.degrees(), db = b.degrees();
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;

  std::vector<int> perm(static_cast<std::size_t>(a.node_count()));
  std::iota(perm.begin(), perm.end(), 0);
  const std::set<std::pair<int, int>> eb(b.edges().begin(), b.edges().end());
  do {
    bool ok = true;
    for (const auto& [u, v] : a.edges()) {
      int pu = perm[static_cast<std::size_t>(u)], pv = perm[static_cast<std::size_t>(v)];
      if (pu > pv) std::swap(pu, pv);
      if (!eb.contains({pu, pv})) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace symbreak
