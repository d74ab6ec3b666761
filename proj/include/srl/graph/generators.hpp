#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "srl/error.hpp"
#include "srl/graph/degree_distribution.hpp"
#include "srl/graph/interference_graph.hpp"
#include "srl/random.hpp"

namespace srl {

/// I.i.d. degrees from `dist`. An odd total is made even by incrementing one
/// uniformly chosen node.
template <class Engine>
std::vector<std::uint32_t> sample_degree_sequence(const DegreeDistribution& dist, std::size_t n,
                                                  Engine& rng) {
  if (n == 0) throw error(errc::invalid_parameter, "node count must be positive");
  std::discrete_distribution<std::uint32_t> draw(dist.masses().begin(), dist.masses().end());
  std::vector<std::uint32_t> degrees(n);
  std::uint64_t total = 0;
  for (auto& d : degrees) {
    d = draw(rng);
    total += d;
  }
  if (total % 2 == 1) ++degrees[uniform_index(rng, n)];
  return degrees;
}

/// Uniform pairing of half-edges, keeping self-loops and parallel edges.
inline Multigraph sample_configuration_multigraph(const DegreeDistribution& dist, std::size_t n,
                                                  Seed seed) {
  Rng rng = make_rng(seed);
  const auto degrees = sample_degree_sequence(dist, n, rng);
  std::vector<NodeId> stubs;
  for (NodeId v = 0; v < n; ++v) stubs.insert(stubs.end(), degrees[v], v);
  std::shuffle(stubs.begin(), stubs.end(), rng);
  Multigraph g(n);
  for (std::size_t h = 0; h + 1 < stubs.size(); h += 2) g.add_edge(stubs[h], stubs[h + 1]);
  return g;
}

/// Erased configuration model: same pairing as the multigraph, with
/// self-loops deleted and parallel edges collapsed.
inline InterferenceGraph sample_configuration_graph(const DegreeDistribution& dist, std::size_t n,
                                                    Seed seed) {
  return sample_configuration_multigraph(dist, n, seed).erased();
}

/// G(n, p) with p = nu / n, sampled by geometric skipping over the pair list.
inline InterferenceGraph sample_er_graph(std::size_t n, double nu, Seed seed) {
  if (n < 2) throw error(errc::invalid_parameter, "Erdos-Renyi graph needs at least two nodes");
  if (!(nu >= 0.0) || nu > static_cast<double>(n - 1)) {
    throw error(errc::invalid_parameter, "mean degree must lie in [0, n-1]");
  }
  std::vector<Edge> edges;
  const double p = nu / static_cast<double>(n);
  if (p > 0.0) {
    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double log_q = std::log1p(-p);
    const auto nn = static_cast<std::int64_t>(n);
    const double cap = static_cast<double>(nn) * static_cast<double>(nn);
    // Pairs (v, w) with w < v visited in row-major order.
    std::int64_t v = 1;
    std::int64_t w = -1;
    while (v < nn) {
      const double skip = std::floor(std::log1p(-unif(rng)) / log_q);
      w += 1 + static_cast<std::int64_t>(std::min(skip, cap));
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
    }
  }
  return InterferenceGraph::from_edges(n, edges);
}

enum class LatticeKind { line, grid };

/// Cycle (every degree 2) or square torus grid (every degree 4).
inline InterferenceGraph make_lattice(LatticeKind kind, std::size_t n) {
  std::vector<Edge> edges;
  if (kind == LatticeKind::line) {
    if (n < 3) throw error(errc::invalid_parameter, "a cycle needs at least three nodes");
    for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, static_cast<NodeId>((v + 1) % n));
  } else {
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (side * side != n) throw error(errc::invalid_parameter, "grid node count must be a perfect square");
    if (side < 3) throw error(errc::invalid_parameter, "torus grid needs side at least 3");
    for (std::size_t r = 0; r < side; ++r) {
      for (std::size_t c = 0; c < side; ++c) {
        const auto v = static_cast<NodeId>(r * side + c);
        edges.emplace_back(v, static_cast<NodeId>(r * side + (c + 1) % side));
        edges.emplace_back(v, static_cast<NodeId>(((r + 1) % side) * side + c));
      }
    }
  }
  return InterferenceGraph::from_edges(n, edges);
}

/// Poisson point process with log-normal fading and power-law path loss.
struct SpatialConfig {
  double target_n = 1000.0;       // expected node count; window side is sqrt(target_n)
  double pathloss_exponent = 2.0;  // a in d^{-a}
  double sigma = 0.0;              // std-dev of the log-fading
  double mean_degree_nu = 2.0;     // mean degree when sigma = 0
  bool torus = true;

  void validate() const {
    if (!(target_n > 0.0)) throw error(errc::invalid_parameter, "target_n must be positive");
    if (!(pathloss_exponent > 0.0)) throw error(errc::invalid_parameter, "path-loss exponent must be positive");
    if (!(sigma >= 0.0)) throw error(errc::invalid_parameter, "sigma must be nonnegative");
    if (!(mean_degree_nu > 0.0)) throw error(errc::invalid_parameter, "mean degree must be positive");
  }

  /// P / P_min chosen so that the fading-free disk has area nu.
  double power_ratio() const {
    return std::pow(mean_degree_nu / std::numbers::pi, pathloss_exponent / 2.0);
  }

  /// Link radius when sigma = 0.
  double disk_radius() const { return std::sqrt(mean_degree_nu / std::numbers::pi); }
};

struct Point {
  double x;
  double y;
};

/// Sampled node positions together with the resulting interference graph.
struct SpatialRealization {
  std::vector<Point> points;
  InterferenceGraph graph;
};

inline SpatialRealization sample_spatial_realization(const SpatialConfig& cfg, Seed seed) {
  cfg.validate();
  Rng rng = make_rng(seed);
  const double side = std::sqrt(cfg.target_n);
  const auto n = static_cast<std::size_t>(std::poisson_distribution<std::int64_t>(cfg.target_n)(rng));
  std::uniform_real_distribution<double> coord(0.0, side);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = coord(rng);
    p.y = coord(rng);
  }

  // Edge iff d^{-a} X > P_min / P, i.e. a log(d) < log X + log(P/P_min).
  const double log_ratio = std::log(cfg.power_ratio());
  const double a = cfg.pathloss_exponent;
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto wrap = [&](double d) {
    d = std::abs(d);
    return cfg.torus ? std::min(d, side - d) : d;
  };
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double dx = wrap(pts[u].x - pts[v].x);
      const double dy = wrap(pts[u].y - pts[v].y);
      const double log_fading = cfg.sigma > 0.0 ? cfg.sigma * gauss(rng) : 0.0;
      const double d2 = dx * dx + dy * dy;
      if (0.5 * a * std::log(d2) < log_fading + log_ratio) edges.emplace_back(u, v);
    }
  }
  return {std::move(pts), InterferenceGraph::from_edges(n, edges)};
}

inline InterferenceGraph sample_spatial_graph(const SpatialConfig& cfg, Seed seed) {
  return sample_spatial_realization(cfg, seed).graph;
}

}  // namespace srl
