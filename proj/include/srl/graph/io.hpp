#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "srl/error.hpp"
#include "srl/graph/interference_graph.hpp"

namespace srl {

/// "N <n>" header followed by one "u v" line per edge, u < v, 0-indexed.
inline void write_edge_list(std::ostream& os, const InterferenceGraph& g) {
  os << "N " << g.size() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

inline InterferenceGraph read_edge_list(std::istream& is) {
  std::string line;
  std::size_t n = 0;
  {
    if (!std::getline(is, line)) throw error(errc::io, "edge list is empty");
    std::istringstream head(line);
    std::string tag;
    if (!(head >> tag >> n) || tag != "N") throw error(errc::io, "edge list must start with 'N <n>'");
  }
  std::vector<Edge> edges;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    if (!(row >> u >> v)) throw error(errc::io, "malformed edge line: " + line);
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw error(errc::io, "edge endpoint out of range: " + line);
    }
    if (u == v) throw error(errc::io, "self-loop in edge list: " + line);
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return InterferenceGraph::from_edges(n, edges);
}

}  // namespace srl
