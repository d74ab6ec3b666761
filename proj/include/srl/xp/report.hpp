#pragma once

#include <cmath>

#include <nlohmann/json.hpp>

#include "srl/fluid/integrate.hpp"
#include "srl/mac/estimate.hpp"
#include "srl/xp/spec.hpp"

namespace srl::xp {

/// Simulated spatial reuse against the fluid prediction.
struct ComparisonReport {
  ThetaStats sim;
  double fluid_theta = 0.0;
  double abs_gap = 0.0;
  bool within_ci = false;
};

inline ComparisonReport make_report(const ThetaStats& sim, double fluid_theta) {
  return {sim, fluid_theta, std::abs(sim.mean - fluid_theta), sim.contains(fluid_theta)};
}

inline nlohmann::json to_json(const ComparisonReport& r) {
  return {{"sim", srl::to_json(r.sim)},
          {"fluid_theta", r.fluid_theta},
          {"abs_gap", r.abs_gap},
          {"within_ci", r.within_ci},
          {"ci_low", r.sim.ci_low()},
          {"ci_high", r.sim.ci_high()}};
}

inline ThetaStats simulate(const ExperimentSpec& s) {
  s.validate();
  return estimate_theta_mc(graph_source(s), s.variant, s.replications, s.seed, s.threads);
}

inline FluidSolution solve_fluid(const ExperimentSpec& s, const IntegrateOptions& opts = {}) {
  s.validate();
  return integrate(fluid_problem(s), opts);
}

inline ComparisonReport compare(const ExperimentSpec& s) {
  IntegrateOptions opts;
  opts.record_trajectory = false;
  const auto sim = simulate(s);
  return make_report(sim, solve_fluid(s, opts).theta);
}

}  // namespace srl::xp
