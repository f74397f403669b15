// pathfinder.hpp -- k-shortest loopless source-sink paths (Yen's deviation
// search) over the word graph, candidate extraction and filtering.

#ifndef MSC_PATHFINDER_HPP
#define MSC_PATHFINDER_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msc/word_graph.hpp"

namespace msc {

// A source-to-sink path. Total weight is always the left-to-right sum of
// edge weights so that equal paths compare bit-identically.
struct GraphPath {
  std::vector<int> nodes;  // includes source and sink
  double weight = 0.0;
};

namespace detail {

inline double path_weight(const WeightedDigraph& g,
                          const std::vector<int>& nodes) {
  double w = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    w += g.weight(nodes[i], nodes[i + 1]);
  return w;
}

// Node order used everywhere ties must break: label, then POS, then id.
inline int compare_nodes(const WeightedDigraph& g, int a, int b) {
  if (a == b) return 0;
  const DigraphNode& na = g.node(a);
  const DigraphNode& nb = g.node(b);
  if (na.label != nb.label) return na.label < nb.label ? -1 : 1;
  if (na.pos != nb.pos) return na.pos < nb.pos ? -1 : 1;
  return a < b ? -1 : 1;
}

// Total path order: weight, then hop count, then node sequence.
inline bool path_less(const WeightedDigraph& g, const GraphPath& a,
                      const GraphPath& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  if (a.nodes.size() != b.nodes.size())
    return a.nodes.size() < b.nodes.size();
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    int c = compare_nodes(g, a.nodes[i], b.nodes[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

// Single-pair shortest path under the composite order, honouring banned
// nodes and edges. Converging label-correcting sweeps; per-node best paths
// are kept whole so tie comparisons see exact sequences.
inline std::optional<GraphPath> shortest_path(
    const WeightedDigraph& g, int src, int dst,
    const std::vector<char>& banned_node,
    const std::set<std::pair<int, int>>& banned_edge) {
  const int n = g.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<GraphPath> best(static_cast<std::size_t>(n));
  for (GraphPath& p : best) p.weight = inf;
  best[static_cast<std::size_t>(src)] = GraphPath{{src}, 0.0};
  bool changed = true;
  while (changed) {
    changed = false;
    for (int u = 0; u < n; ++u) {
      const GraphPath& from = best[static_cast<std::size_t>(u)];
      if (!(from.weight < inf)) continue;
      if (banned_node[static_cast<std::size_t>(u)]) continue;
      for (const auto& [v, w] : g.out(u)) {
        if (banned_node[static_cast<std::size_t>(v)]) continue;
        if (banned_edge.count({u, v})) continue;
        GraphPath cand;
        cand.weight = from.weight + w;
        GraphPath& cur = best[static_cast<std::size_t>(v)];
        if (cand.weight > cur.weight) continue;
        cand.nodes = from.nodes;
        cand.nodes.push_back(v);
        if (path_less(g, cand, cur)) {
          cur = std::move(cand);
          changed = true;
        }
      }
    }
  }
  GraphPath& found = best[static_cast<std::size_t>(dst)];
  if (!(found.weight < inf)) return std::nullopt;
  // Recompute canonically: the sweep accumulates left to right already, but
  // make the invariant explicit.
  found.weight = path_weight(g, found.nodes);
  return std::move(found);
}

}  // namespace detail

// The k lowest-weight simple source-to-sink paths in the global composite
// order (weight, hop count, node sequence). Fewer than k are returned when
// the graph runs out of simple paths.
inline std::vector<GraphPath> k_shortest_paths(const WeightedDigraph& g,
                                               std::size_t k) {
  std::vector<GraphPath> found;
  if (k == 0) return found;
  std::vector<char> no_nodes(static_cast<std::size_t>(g.size()), 0);
  std::set<std::pair<int, int>> no_edges;
  std::optional<GraphPath> first = detail::shortest_path(
      g, WeightedDigraph::kStart, WeightedDigraph::kEnd, no_nodes, no_edges);
  if (!first) return found;
  found.push_back(std::move(*first));

  auto order = [&g](const GraphPath& a, const GraphPath& b) {
    return detail::path_less(g, a, b);
  };
  std::set<GraphPath, decltype(order)> frontier(order);
  std::set<std::vector<int>> seen;
  seen.insert(found.front().nodes);

  while (found.size() < k) {
    const std::vector<int> prev = found.back().nodes;
    for (std::size_t spur = 0; spur + 1 < prev.size(); ++spur) {
      int spur_node = prev[spur];
      std::vector<char> banned_node(static_cast<std::size_t>(g.size()), 0);
      for (std::size_t i = 0; i < spur; ++i)
        banned_node[static_cast<std::size_t>(prev[i])] = 1;
      std::set<std::pair<int, int>> banned_edge;
      for (const GraphPath& p : found) {
        if (p.nodes.size() <= spur + 1) continue;
        bool same_root = true;
        for (std::size_t i = 0; i <= spur && same_root; ++i)
          same_root = p.nodes[i] == prev[i];
        if (same_root)
          banned_edge.insert({p.nodes[spur], p.nodes[spur + 1]});
      }
      std::optional<GraphPath> tail = detail::shortest_path(
          g, spur_node, WeightedDigraph::kEnd, banned_node, banned_edge);
      if (!tail) continue;
      std::vector<int> total(prev.begin(),
                             prev.begin() + static_cast<long>(spur));
      total.insert(total.end(), tail->nodes.begin(), tail->nodes.end());
      if (seen.count(total)) continue;
      seen.insert(total);
      GraphPath cand;
      cand.weight = detail::path_weight(g, total);
      cand.nodes = std::move(total);
      frontier.insert(std::move(cand));
    }
    if (frontier.empty()) break;
    found.push_back(*frontier.begin());
    frontier.erase(frontier.begin());
  }
  return found;
}

// ---------------------------------------------------------------------------
// Candidates

struct CompressionCandidate {
  std::vector<int> node_ids;        // interior nodes, source/sink excluded
  std::vector<DigraphNode> tokens;  // payload copies in path order
  double total_weight = 0.0;
  int edge_count = 0;
  int word_count = 0;  // surface words, merged MWEs expanded
  // Filled by the scoring stages.
  double informativity_cost = std::numeric_limits<double>::quiet_NaN();
  double lm_score = std::numeric_limits<double>::quiet_NaN();

  std::string text() const {
    std::string s;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) s += ' ';
      s += tokens[i].label;
    }
    return s;
  }
  std::vector<std::string> pos_tags() const {
    std::vector<std::string> tags;
    tags.reserve(tokens.size());
    for (const DigraphNode& t : tokens) tags.push_back(t.pos);
    return tags;
  }
  std::vector<std::string> words() const {
    std::vector<std::string> ws;
    for (const DigraphNode& t : tokens) ws.push_back(t.label);
    return ws;
  }
};

inline CompressionCandidate to_candidate(const WeightedDigraph& g,
                                         const GraphPath& path) {
  CompressionCandidate c;
  c.total_weight = path.weight;
  c.edge_count = static_cast<int>(path.nodes.size()) - 1;
  for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) {
    int id = path.nodes[i];
    c.node_ids.push_back(id);
    c.tokens.push_back(g.node(id));
    c.word_count += g.node(id).word_count;
  }
  return c;
}

inline std::vector<CompressionCandidate> to_candidates(
    const WeightedDigraph& g, const std::vector<GraphPath>& paths) {
  std::vector<CompressionCandidate> out;
  out.reserve(paths.size());
  for (const GraphPath& p : paths) out.push_back(to_candidate(g, p));
  return out;
}

inline const std::set<std::string>& default_verb_tags() {
  static const std::set<std::string> tags{"VB",  "VBD", "VBG",
                                          "VBN", "VBP", "VBZ"};
  return tags;
}

// Drops candidates shorter than min_words surface words or lacking a verb.
// Order is preserved.
inline std::vector<CompressionCandidate> filter_candidates(
    const std::vector<CompressionCandidate>& cands, int min_words,
    const std::set<std::string>& verb_tags = default_verb_tags()) {
  std::vector<CompressionCandidate> out;
  for (const CompressionCandidate& c : cands) {
    if (c.word_count < min_words) continue;
    bool has_verb = false;
    for (const DigraphNode& t : c.tokens)
      if (verb_tags.count(t.pos)) {
        has_verb = true;
        break;
      }
    if (has_verb) out.push_back(c);
  }
  return out;
}

inline double average_edge_weight(const CompressionCandidate& c) {
  if (c.edge_count <= 0)
    throw std::invalid_argument("candidate without edges");
  return c.total_weight / static_cast<double>(c.edge_count);
}

}  // namespace msc

#endif  // MSC_PATHFINDER_HPP
