#include <gtest/gtest.h>

#include <cmath>

#include "srl/graph/generators.hpp"
#include "srl/mac/estimate.hpp"
#include "srl/mac/lazy.hpp"
#include "srl/mac/oracle.hpp"
#include "srl/mac/slot.hpp"

using namespace srl;

namespace {

InterferenceGraph path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return InterferenceGraph::from_edges(n, e);
}

InterferenceGraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return InterferenceGraph::from_edges(n, e);
}

InterferenceGraph matching(std::size_t pairs) {
  std::vector<Edge> e;
  for (NodeId p = 0; p < pairs; ++p) e.emplace_back(2 * p, 2 * p + 1);
  return InterferenceGraph::from_edges(2 * pairs, e);
}

}  // namespace

TEST(Variant, NamesRoundTrip) {
  for (auto v : all_variants) EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_FALSE(parse_variant("nope").has_value());
}

TEST(RunSlot, MatchingGivesOneHalf) {
  for (auto v : all_variants) {
    for (Seed s = 0; s < 20; ++s) {
      const auto out = run_slot(matching(8), v, s);
      EXPECT_DOUBLE_EQ(out.theta, 0.5);
      EXPECT_EQ(out.pairs.size(), 8u);
    }
  }
}

TEST(RunSlot, EdgelessGivesZero) {
  const auto g = InterferenceGraph::from_edges(7, {});
  for (auto v : all_variants) {
    const auto out = run_slot(g, v, 1);
    EXPECT_EQ(out.theta, 0.0);
    EXPECT_EQ(out.rts_count, 7u);
  }
}

TEST(RunSlot, CompleteGraphGivesOneOverN) {
  for (auto v : all_variants) {
    for (Seed s = 0; s < 20; ++s) EXPECT_DOUBLE_EQ(run_slot(complete(6), v, s).theta, 1.0 / 6.0);
  }
}

TEST(RunSlot, Deterministic) {
  const auto g = sample_er_graph(200, 3.0, 1);
  for (auto v : all_variants) EXPECT_EQ(run_slot(g, v, 42), run_slot(g, v, 42));
}

TEST(RunSlot, ObserverSeesEveryTurn) {
  const auto g = path(6);
  std::size_t calls = 0;
  run_slot(g, Variant::fail_block, 3, [&](std::span<const NodeState> st) {
    EXPECT_EQ(st.size(), 6u);
    ++calls;
  });
  EXPECT_EQ(calls, 6u);
}

TEST(RunSlot, PairsAreEdges) {
  const auto g = sample_configuration_graph(DegreeDistribution::uniform(1, 5), 300, 4);
  for (auto v : all_variants) {
    const auto out = run_slot(g, v, 8);
    for (auto [s, r] : out.pairs) {
      EXPECT_TRUE(g.has_edge(s, r));
      EXPECT_EQ(out.final_states[s], NodeState::active);
      EXPECT_EQ(out.final_states[r], NodeState::active);
    }
  }
}

TEST(RunSlot, WorksOnMultigraphs) {
  const auto mg = sample_configuration_multigraph(DegreeDistribution::delta(3), 40, 5);
  for (auto v : all_variants) {
    const auto out = run_slot(mg, v, 5);
    EXPECT_EQ(out.count(NodeState::unexplored), 0u);
    EXPECT_LE(out.theta, 0.5);
  }
}

TEST(Oracle, DerivedFixtures) {
  EXPECT_NEAR(brute_force_theta(path(3), Variant::ideal_retry), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(brute_force_theta(path(5), Variant::ideal_retry), 0.32, 1e-12);
  EXPECT_NEAR(brute_force_theta(path(5), Variant::fail_block), 0.29, 1e-12);
}

TEST(Oracle, TrivialGraphs) {
  for (auto v : all_variants) {
    EXPECT_NEAR(brute_force_theta(matching(3), v), 0.5, 1e-12);
    EXPECT_NEAR(brute_force_theta(complete(5), v), 0.2, 1e-12);
    EXPECT_EQ(brute_force_theta(InterferenceGraph::from_edges(4, {}), v), 0.0);
  }
}

TEST(Oracle, RefusesLargeGraphs) {
  try {
    brute_force_theta(path(11), Variant::ideal_retry);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::oracle_limit);
  }
}

TEST(Oracle, MonteCarloAgreesOnStar) {
  std::vector<Edge> e{{0, 1}, {0, 2}, {0, 3}, {3, 4}};
  const auto g = InterferenceGraph::from_edges(5, e);
  for (auto v : all_variants) {
    const auto st = estimate_theta_mc(g, v, 20000, 77, 1);
    EXPECT_LT(std::abs(st.mean - brute_force_theta(g, v)), 4.0 * st.std_error() + 1e-12) << to_string(v);
  }
}

TEST(Lazy, OnlyIdealRetry) {
  EXPECT_THROW(run_slot_lazy(DegreeDistribution::delta(2), 10, Variant::fail_block, 1), error);
}

TEST(Lazy, MatchingLaw) {
  const auto out = run_slot_lazy(DegreeDistribution::delta(1), 1000, Variant::ideal_retry, 3);
  // delta_1 yields a perfect matching, up to the parity fix of one node.
  EXPECT_NEAR(out.theta, 0.5, 0.002);
}

TEST(Lazy, SameLawAsMultigraph) {
  const auto dist = DegreeDistribution::delta(2);
  std::vector<double> lazy;
  std::vector<double> fixed;
  for (std::size_t r = 0; r < 20000; ++r) {
    lazy.push_back(run_slot_lazy(dist, 12, Variant::ideal_retry, derive_seed(1, r)).theta);
    const auto g = sample_configuration_multigraph(dist, 12, derive_seed(2, r));
    fixed.push_back(run_slot(g, Variant::ideal_retry, derive_seed(3, r)).theta);
  }
  const auto a = summarize(lazy);
  const auto b = summarize(fixed);
  EXPECT_LT(std::abs(a.mean - b.mean), 4.0 * std::hypot(a.std_error(), b.std_error()));
}

TEST(Estimate, SummaryStatistics) {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const auto st = summarize(xs);
  EXPECT_DOUBLE_EQ(st.mean, 2.5);
  EXPECT_DOUBLE_EQ(st.variance, 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(st.median, 2.5);
  EXPECT_DOUBLE_EQ(st.q25, 1.75);
  EXPECT_DOUBLE_EQ(st.q75, 3.25);
  EXPECT_EQ(st.min, 1.0);
  EXPECT_EQ(st.max, 4.0);
  EXPECT_THROW(summarize(std::vector<double>{}), error);
}

TEST(Estimate, IndependentOfThreadCount) {
  const GraphSource src = ErSource{300, 4.0};
  const auto one = replicate_thetas(src, Variant::fail_timeout, 17, 9, 1);
  const auto four = replicate_thetas(src, Variant::fail_timeout, 17, 9, 4);
  EXPECT_EQ(one, four);
}

TEST(Estimate, FixedGraphMatchingHasZeroVariance) {
  const auto st = estimate_theta_mc(matching(50), Variant::ideal_retry, 10, 1);
  EXPECT_DOUBLE_EQ(st.mean, 0.5);
  EXPECT_DOUBLE_EQ(st.variance, 0.0);
}

TEST(Estimate, CsvAndJson) {
  const auto st = summarize(std::vector<double>{0.25, 0.5});
  std::ostringstream os;
  write_stats_csv_header(os);
  write_stats_csv_row(os, st);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "replications,mean,variance,min,q25,median,q75,max");
  const auto j = to_json(run_slot(path(2), Variant::ideal_retry, 1));
  EXPECT_EQ(j["final_states"][0], "active");
  EXPECT_EQ(j["pairs"].size(), 1u);
  EXPECT_DOUBLE_EQ(j["theta"].get<double>(), 0.5);
}
