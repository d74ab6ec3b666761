#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "srl/graph/degree_distribution.hpp"
#include "srl/graph/generators.hpp"
#include "srl/graph/interference_graph.hpp"
#include "srl/graph/io.hpp"

using namespace srl;

TEST(DegreeDistribution, TrimsTrailingZeros) {
  DegreeDistribution d({0.5, 0.5, 0.0, 0.0});
  EXPECT_EQ(d.max_degree(), 1u);
  EXPECT_EQ(d.support_size(), 2u);
}

TEST(DegreeDistribution, RejectsBadMasses) {
  EXPECT_THROW(DegreeDistribution({0.5, 0.4}), error);
  EXPECT_THROW(DegreeDistribution({1.5, -0.5}), error);
  EXPECT_THROW(DegreeDistribution::from_weights({0.0, 0.0}), error);
  EXPECT_THROW(DegreeDistribution::uniform(3, 2), error);
}

TEST(DegreeDistribution, Moments) {
  const auto u = DegreeDistribution::uniform(1, 3);
  EXPECT_DOUBLE_EQ(mean_degree(u), 2.0);
  EXPECT_DOUBLE_EQ(moment(DegreeDistribution::delta(4), 6), 4096.0);
  EXPECT_DOUBLE_EQ(moment(DegreeDistribution::delta(0), 1), 0.0);
}

TEST(DegreeDistribution, CsvRoundTrip) {
  const auto u = DegreeDistribution::from_weights({1.0, 2.0, 0.0, 1.0});
  std::stringstream ss;
  write_csv(ss, u);
  const auto back = read_distribution_csv(ss);
  ASSERT_EQ(back.support_size(), u.support_size());
  for (std::size_t i = 0; i < u.support_size(); ++i) EXPECT_NEAR(back[i], u[i], 1e-15);
}

TEST(DegreeDistribution, CsvRejectsGarbage) {
  std::stringstream bad("nonsense\n");
  EXPECT_THROW(read_distribution_csv(bad), error);
  std::stringstream bad_row("degree,mass\n1;0.5\n");
  EXPECT_THROW(read_distribution_csv(bad_row), error);
}

TEST(InterferenceGraph, DropsLoopsAndDuplicates) {
  std::vector<Edge> e{{0, 1}, {1, 0}, {2, 2}, {1, 2}};
  const auto g = InterferenceGraph::from_edges(3, e);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_FALSE(g.has_edge(2, 2));
  EXPECT_TRUE(g.is_valid());
  EXPECT_EQ(g.degree(1), 2u);
}

TEST(InterferenceGraph, EmpiricalDegrees) {
  std::vector<Edge> e{{0, 1}, {1, 2}};
  const auto g = InterferenceGraph::from_edges(4, e);
  const auto d = empirical_degree_distribution(g);
  EXPECT_DOUBLE_EQ(d[0], 0.25);
  EXPECT_DOUBLE_EQ(d[1], 0.5);
  EXPECT_DOUBLE_EQ(d[2], 0.25);
}

TEST(ConfigurationModel, DeltaTwoMultigraphIsTwoRegular) {
  const auto mg = sample_configuration_multigraph(DegreeDistribution::delta(2), 50, 3);
  for (NodeId v = 0; v < mg.size(); ++v) EXPECT_EQ(mg.degree(v), 2u);
  const auto g = mg.erased();
  EXPECT_TRUE(g.is_valid());
  for (NodeId v = 0; v < g.size(); ++v) EXPECT_LE(g.degree(v), 2u);
}

TEST(ConfigurationModel, DeterministicPerSeed) {
  const auto d = DegreeDistribution::uniform(1, 4);
  EXPECT_EQ(sample_configuration_graph(d, 200, 9), sample_configuration_graph(d, 200, 9));
  EXPECT_FALSE(sample_configuration_graph(d, 200, 9) == sample_configuration_graph(d, 200, 10));
}

TEST(ConfigurationModel, EmpiricalLawApproachesTarget) {
  const auto d = DegreeDistribution::uniform(1, 3);
  const auto g = sample_configuration_graph(d, 20000, 5);
  const auto emp = empirical_degree_distribution(g);
  EXPECT_LT(total_variation(emp.masses(), d.masses()), 0.02);
}

TEST(ErdosRenyi, MeanDegreeAndDeterminism) {
  const auto g = sample_er_graph(2000, 5.0, 7);
  EXPECT_TRUE(g.is_valid());
  const double mean = 2.0 * static_cast<double>(g.edge_count()) / 2000.0;
  EXPECT_NEAR(mean, 5.0 * 1999.0 / 2000.0, 0.25);
  EXPECT_EQ(g, sample_er_graph(2000, 5.0, 7));
}

TEST(ErdosRenyi, Extremes) {
  EXPECT_EQ(sample_er_graph(10, 0.0, 1).edge_count(), 0u);
  EXPECT_THROW(sample_er_graph(1, 0.0, 1), error);
  EXPECT_THROW(sample_er_graph(10, 10.0, 1), error);
}

TEST(ErdosRenyi, EdgeFrequencyIsUniformOverPairs) {
  // Each of the 6 pairs of a 4-node graph appears with probability p = nu/n.
  std::vector<int> hits(16, 0);
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    for (auto [u, v] : sample_er_graph(4, 2.0, static_cast<Seed>(t)).edges()) ++hits[u * 4 + v];
  }
  for (NodeId u = 0; u < 4; ++u) {
    for (NodeId v = u + 1; v < 4; ++v) EXPECT_NEAR(hits[u * 4 + v] / double(trials), 0.5, 0.02);
  }
}

TEST(Lattice, CycleAndTorus) {
  const auto line = make_lattice(LatticeKind::line, 5);
  for (NodeId v = 0; v < 5; ++v) EXPECT_EQ(line.degree(v), 2u);
  const auto grid = make_lattice(LatticeKind::grid, 9);
  for (NodeId v = 0; v < 9; ++v) EXPECT_EQ(grid.degree(v), 4u);
  EXPECT_EQ(grid.edge_count(), 18u);
  EXPECT_THROW(make_lattice(LatticeKind::grid, 10), error);
  EXPECT_THROW(make_lattice(LatticeKind::grid, 4), error);
  EXPECT_THROW(make_lattice(LatticeKind::line, 2), error);
}

TEST(Spatial, NoFadingIsDiskGraph) {
  SpatialConfig cfg;
  cfg.target_n = 400;
  const auto r = sample_spatial_realization(cfg, 11);
  const double side = std::sqrt(cfg.target_n);
  const double r0 = cfg.disk_radius();
  for (NodeId u = 0; u < r.points.size(); ++u) {
    for (NodeId v = u + 1; v < r.points.size(); ++v) {
      double dx = std::abs(r.points[u].x - r.points[v].x);
      double dy = std::abs(r.points[u].y - r.points[v].y);
      dx = std::min(dx, side - dx);
      dy = std::min(dy, side - dy);
      const double d = std::hypot(dx, dy);
      if (std::abs(d - r0) > 1e-9) {
        EXPECT_EQ(r.graph.has_edge(u, v), d < r0);
      }
    }
  }
}

TEST(Spatial, MeanDegreeNearNuWithoutFading) {
  SpatialConfig cfg;
  double total = 0.0;
  double nodes = 0.0;
  for (Seed s = 0; s < 20; ++s) {
    const auto g = sample_spatial_graph(cfg, s);
    total += 2.0 * static_cast<double>(g.edge_count());
    nodes += static_cast<double>(g.size());
  }
  EXPECT_NEAR(total / nodes, 2.0, 0.05);
}

TEST(Spatial, FadingRaisesMeanDegree) {
  SpatialConfig flat;
  SpatialConfig faded;
  faded.sigma = 1.0;
  double d0 = 0.0;
  double d1 = 0.0;
  for (Seed s = 0; s < 100; ++s) {
    const auto g0 = sample_spatial_graph(flat, s);
    const auto g1 = sample_spatial_graph(faded, s);
    d0 += 2.0 * static_cast<double>(g0.edge_count()) / static_cast<double>(g0.size());
    d1 += 2.0 * static_cast<double>(g1.edge_count()) / static_cast<double>(g1.size());
  }
  EXPECT_GT(d1, d0);
  // Log-normal fading with log-mean 0 scales the link area by E[X] = e^{sigma^2/2} when a = 2.
  EXPECT_NEAR(d1 / 100.0, 2.0 * std::exp(0.5), 0.1);
}

TEST(Spatial, PowerRatioGivesDiskAreaNu) {
  SpatialConfig cfg;
  cfg.pathloss_exponent = 3.0;
  cfg.mean_degree_nu = 5.0;
  const double r0 = std::pow(cfg.power_ratio(), 1.0 / cfg.pathloss_exponent);
  EXPECT_NEAR(std::numbers::pi * r0 * r0, 5.0, 1e-12);
}

TEST(EdgeList, RoundTrip) {
  const auto g = sample_er_graph(300, 4.0, 2);
  std::stringstream ss;
  write_edge_list(ss, g);
  EXPECT_EQ(read_edge_list(ss), g);
}

TEST(EdgeList, RejectsMalformedInput) {
  std::stringstream no_header("0 1\n");
  EXPECT_THROW(read_edge_list(no_header), error);
  std::stringstream out_of_range("N 2\n0 5\n");
  EXPECT_THROW(read_edge_list(out_of_range), error);
  std::stringstream loop("N 2\n1 1\n");
  EXPECT_THROW(read_edge_list(loop), error);
}
