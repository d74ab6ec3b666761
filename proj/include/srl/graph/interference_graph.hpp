#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "srl/error.hpp"
#include "srl/graph/degree_distribution.hpp"

namespace srl {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph stored as sorted per-node neighbor lists.
class InterferenceGraph {
 public:
  InterferenceGraph() = default;
  explicit InterferenceGraph(std::size_t n) : adjacency_(n) {}

  /// Builds a simple graph; self-loops are dropped and parallel edges merged.
  static InterferenceGraph from_edges(std::size_t n, std::span<const Edge> edges) {
    InterferenceGraph g(n);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw error(errc::invalid_parameter, "edge endpoint out of range");
      if (u == v) continue;
      g.adjacency_[u].push_back(v);
      g.adjacency_[v].push_back(u);
    }
    for (auto& nbrs : g.adjacency_) {
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return g;
  }

  std::size_t size() const noexcept { return adjacency_.size(); }
  std::span<const NodeId> neighbors(NodeId v) const noexcept { return adjacency_[v]; }
  std::size_t degree(NodeId v) const noexcept { return adjacency_[v].size(); }

  std::size_t edge_count() const noexcept {
    std::size_t twice = 0;
    for (const auto& nbrs : adjacency_) twice += nbrs.size();
    return twice / 2;
  }

  bool has_edge(NodeId u, NodeId v) const {
    const auto& nbrs = adjacency_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < size(); ++u) {
      for (NodeId v : adjacency_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  /// Symmetric, loop-free, duplicate-free, sorted.
  bool is_valid() const {
    for (NodeId u = 0; u < size(); ++u) {
      const auto& nbrs = adjacency_[u];
      if (!std::is_sorted(nbrs.begin(), nbrs.end())) return false;
      if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) return false;
      for (NodeId v : nbrs) {
        if (v == u || v >= size() || !has_edge(v, u)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const InterferenceGraph&, const InterferenceGraph&) = default;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Configuration-model pairing before erasure. Each neighbor entry is the far
/// end of one half-edge, so parallel edges repeat and a self-loop lists the
/// node twice in its own list.
class Multigraph {
 public:
  explicit Multigraph(std::size_t n) : adjacency_(n) {}

  void add_edge(NodeId u, NodeId v) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }

  std::size_t size() const noexcept { return adjacency_.size(); }
  std::span<const NodeId> neighbors(NodeId v) const noexcept { return adjacency_[v]; }
  std::size_t degree(NodeId v) const noexcept { return adjacency_[v].size(); }

  InterferenceGraph erased() const {
    std::vector<Edge> e;
    for (NodeId u = 0; u < size(); ++u) {
      for (NodeId v : adjacency_[u]) {
        if (u < v) e.emplace_back(u, v);
      }
    }
    return InterferenceGraph::from_edges(size(), e);
  }

 private:
  std::vector<std::vector<NodeId>> adjacency_;
};

template <class G>
concept GraphLike = requires(const G& g, NodeId v) {
  { g.size() } -> std::convertible_to<std::size_t>;
  { g.neighbors(v) } -> std::convertible_to<std::span<const NodeId>>;
};

/// mass(i) = fraction of nodes with degree i.
template <GraphLike G>
DegreeDistribution empirical_degree_distribution(const G& g) {
  if (g.size() == 0) throw error(errc::invalid_parameter, "graph has no nodes");
  std::vector<double> counts;
  for (NodeId v = 0; v < g.size(); ++v) {
    const std::size_t d = g.neighbors(v).size();
    if (counts.size() <= d) counts.resize(d + 1, 0.0);
    counts[d] += 1.0;
  }
  return DegreeDistribution::from_weights(std::move(counts));
}

/// Pooled degree histogram over several graphs.
inline DegreeDistribution empirical_degree_distribution(std::span<const InterferenceGraph> graphs) {
  std::vector<double> counts;
  for (const auto& g : graphs) {
    for (NodeId v = 0; v < g.size(); ++v) {
      const std::size_t d = g.degree(v);
      if (counts.size() <= d) counts.resize(d + 1, 0.0);
      counts[d] += 1.0;
    }
  }
  if (counts.empty()) throw error(errc::invalid_parameter, "graphs have no nodes");
  return DegreeDistribution::from_weights(std::move(counts));
}

}  // namespace srl
