#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "symbreak/rule.hpp"

namespace symbreak {

struct OracleLimits {
  // Bound on the backtracking search. Exceeding it raises CapError; the
  // oracle never guesses.
  int max_body_only_vars = 10;
  // Test hook: disable the occurrence-profile filter and search blindly.
  bool use_occurrence_pruning = true;
};

// Certificate that two rules are equal up to renaming body-only variables.
struct VariantWitness {
  Renaming sigma;  // maps vars of the first rule onto the second, fixing head vars
};

// Decides whether b = a sigma for some bijective renaming sigma of the
// body-only variables that fixes the head. Returns the lexicographically
// smallest witness (by assignment of ascending body-only variables), or
// nullopt. Exact: never a false answer, CapError when too large.
std::optional<VariantWitness> is_body_variant(const Rule& a, const Rule& b,
                                              const OracleLimits& limits = {});

// Rule-by-rule matching of two hypotheses: a bijection between the rule sets
// such that each pair is a body variant.
struct HypothesisPairing {
  std::vector<std::size_t> rule_map;      // index into b.rules() for each rule of a
  std::vector<Renaming> witnesses;        // per matched pair
};

std::optional<HypothesisPairing> is_hypothesis_variant(const Hypothesis& a, const Hypothesis& b,
                                                       const OracleLimits& limits = {});

// Undirected simple graph on nodes 0..n-1.
class Graph {
public:
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int node_count() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }  // u < v, sorted
  std::vector<int> degrees() const;
  bool has_isolated_node() const;

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

// Text form: first line node count, then one "u v" pair per line. "%" starts
// a comment.
Graph parse_graph(std::string_view text);

struct GraphRuleResult {
  Rule rule;
  // Isolated nodes cannot be represented by edge literals; the rule only
  // covers nodes with at least one edge.
  bool dropped_isolated_nodes;
};

// Encodes a graph as a rule with a 0-ary head and edge(U,V), edge(V,U) body
// literals for every edge {U,V}. Two edge-encoded graphs without isolated
// nodes are isomorphic exactly when their rules are body variants.
GraphRuleResult graph_to_rule(const Graph& g);

// Brute-force isomorphism check, for cross-checking the reduction.
bool graphs_isomorphic(const Graph& a, const Graph& b, int max_nodes = 8);

}  // namespace symbreak
