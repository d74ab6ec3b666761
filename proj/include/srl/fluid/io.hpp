#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "srl/fluid/integrate.hpp"

namespace srl {

namespace detail {

inline std::string index_label(const DegreeMeasure& m, std::size_t f) {
  const auto idx = m.index(f);
  std::string s = std::to_string(idx[0]);
  for (int r = 1; r < m.rank(); ++r) s += '_' + std::to_string(idx[static_cast<std::size_t>(r)]);
  return s;
}

}  // namespace detail

/// One row per saved time: t, unexplored entries (row-major), sans-CTS
/// entries when present, c_bar. Rows without a stored measure are skipped.
inline void write_solution_csv(std::ostream& os, const FluidSolution& sol) {
  const auto old = os.precision(17);
  const bool full = sol.trajectory.size() == sol.times.size();
  const DegreeMeasure& shape = sol.final_unexplored;
  const bool sans = !sol.sans_trajectory.empty();
  os << 't';
  for (std::size_t f = 0; f < shape.size(); ++f) os << ",m_" << detail::index_label(shape, f);
  if (sans) {
    for (std::size_t f = 0; f < sol.final_sans.size(); ++f) os << ",s_" << detail::index_label(sol.final_sans, f);
  }
  os << ",c_bar\n";
  auto row = [&](std::size_t at, const DegreeMeasure& m, const DegreeMeasure* s) {
    os << sol.times[at];
    for (double x : m.data()) os << ',' << x;
    if (s) {
      for (double x : s->data()) os << ',' << x;
    }
    os << ',' << sol.c_bar[at] << '\n';
  };
  if (full) {
    for (std::size_t i = 0; i < sol.times.size(); ++i) row(i, sol.trajectory[i], sans ? &sol.sans_trajectory[i] : nullptr);
  } else if (!sol.times.empty()) {
    row(sol.times.size() - 1, sol.final_unexplored, sans ? &sol.final_sans : nullptr);
  }
  os.precision(old);
}

inline nlohmann::json solution_sidecar(const FluidSolution& sol, const FluidProblem& problem,
                                       const IntegrateOptions& opts) {
  nlohmann::json initial = {{"rank", problem.unexplored.rank()},
                            {"extent", problem.unexplored.extent()},
                            {"mass", std::vector<double>(problem.unexplored.data().begin(),
                                                         problem.unexplored.data().end())}};
  if (problem.system == FluidSystem::poisson) initial["nu"] = problem.nu;
  return {{"system", std::string(to_string(sol.system))},
          {"lambda", sol.lambda},
          {"rel_tol", opts.rel_tol},
          {"abs_tol", opts.abs_tol},
          {"stop_mass", opts.stop_mass},
          {"initial", std::move(initial)},
          {"theta", sol.theta},
          {"steps", sol.steps},
          {"final_time", sol.times.empty() ? 0.0 : sol.times.back()}};
}

}  // namespace srl
