#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "srl/error.hpp"
#include "srl/fluid/measure.hpp"
#include "srl/fluid/rhs.hpp"
#include "srl/graph/degree_distribution.hpp"

namespace srl {

enum class FluidSystem { parking, sender_receiver, poisson, fail_block, fail_timeout };

inline constexpr FluidSystem all_fluid_systems[] = {FluidSystem::parking, FluidSystem::sender_receiver,
                                                    FluidSystem::poisson, FluidSystem::fail_block,
                                                    FluidSystem::fail_timeout};

inline std::string_view to_string(FluidSystem s) {
  switch (s) {
    case FluidSystem::parking: return "parking";
    case FluidSystem::sender_receiver: return "sender-receiver";
    case FluidSystem::poisson: return "poisson";
    case FluidSystem::fail_block: return "fail-block";
    case FluidSystem::fail_timeout: return "fail-timeout";
  }
  return "?";
}

inline FluidSystem parse_fluid_system(std::string_view s) {
  for (auto sys : all_fluid_systems) {
    if (to_string(sys) == s) return sys;
  }
  throw error(errc::invalid_parameter, "unknown fluid system: " + std::string(s));
}

/// Initial condition of one fluid system. The Poisson system keeps its
/// scalar state u in a rank-1 measure of extent 1; `sans` is used by the
/// timeout system only.
struct FluidProblem {
  FluidSystem system = FluidSystem::sender_receiver;
  DegreeMeasure unexplored;
  DegreeMeasure sans;
  double nu = 0.0;
  double lambda = 1.0;

  /// Every node unexplored with degrees drawn from `dist`.
  static FluidProblem from_distribution(FluidSystem system, const DegreeDistribution& dist,
                                        double lambda = 1.0) {
    if (system == FluidSystem::poisson) return poisson(mean_degree(dist), 1.0, lambda);
    FluidProblem p;
    p.system = system;
    p.lambda = lambda;
    const std::size_t e = dist.support_size();
    switch (system) {
      case FluidSystem::fail_block:
        p.unexplored = DegreeMeasure::from_distribution(dist, 2, e);
        break;
      case FluidSystem::fail_timeout:
        p.unexplored = DegreeMeasure::from_distribution(dist, 3, e);
        p.sans = DegreeMeasure(2, e);
        break;
      default:
        p.unexplored = DegreeMeasure::from_distribution(dist, 1, e);
    }
    return p;
  }

  static FluidProblem poisson(double nu, double u0 = 1.0, double lambda = 1.0) {
    if (!(nu >= 0.0)) throw error(errc::invalid_parameter, "nu must be nonnegative");
    if (!(u0 >= 0.0 && u0 <= 1.0)) throw error(errc::invalid_parameter, "u0 must lie in [0, 1]");
    FluidProblem p;
    p.system = FluidSystem::poisson;
    p.unexplored = DegreeMeasure::from_masses({u0});
    p.nu = nu;
    p.lambda = lambda;
    return p;
  }
};

struct IntegrateOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  double initial_step = 1e-3;
  double max_step = 0.1;
  double stop_mass = 1e-10;
  /// Entries below -instability_tol after a step abort the integration;
  /// shallower negatives are clipped to zero.
  double instability_tol = DegreeMeasure::clip_tolerance;
  bool record_trajectory = true;
  std::size_t max_steps = 1'000'000;
};

struct FluidSolution {
  FluidSystem system = FluidSystem::sender_receiver;
  double lambda = 1.0;
  std::vector<double> times;
  std::vector<double> c_bar;
  std::vector<double> unexplored_mass;
  std::vector<DegreeMeasure> trajectory;  // empty unless recorded
  std::vector<DegreeMeasure> sans_trajectory;
  DegreeMeasure final_unexplored;
  DegreeMeasure final_sans;
  double theta = 0.0;
  double min_entry_before_clip = 0.0;
  std::size_t steps = 0;
};

inline double theta_from_solution(const FluidSolution& sol) { return sol.c_bar.empty() ? 0.0 : sol.c_bar.back(); }

/// CTS-flow density (dc/dt divided by lambda) of the current state.
inline double cts_flow(const FluidProblem& p, const DegreeMeasure& m) {
  switch (p.system) {
    case FluidSystem::parking: return m.total();
    case FluidSystem::sender_receiver: return cts_flow_sender_receiver(m);
    case FluidSystem::poisson: return cts_flow_poisson(m(0), p.nu);
    case FluidSystem::fail_block: return cts_flow_fail_block(m);
    case FluidSystem::fail_timeout: return cts_flow_fail_timeout(m);
  }
  return 0.0;
}

/// Mass of unexplored nodes that can still produce a CTS.
inline double useful_mass(const FluidProblem& p, const DegreeMeasure& m) {
  double acc = 0.0;
  switch (p.system) {
    case FluidSystem::parking: return m.total();
    case FluidSystem::poisson: return p.nu > 0.0 ? m(0) : 0.0;
    case FluidSystem::sender_receiver:
      for (std::size_t i = 1; i < m.extent(); ++i) acc += m(i);
      return acc;
    case FluidSystem::fail_block:
      for (std::size_t i = 1; i < m.extent(); ++i) {
        for (std::size_t j = 0; j < m.extent(); ++j) acc += m(i, j);
      }
      return acc;
    case FluidSystem::fail_timeout:
      for (std::size_t f = 0; f < m.size(); ++f) {
        const auto idx = m.index(f);
        if (idx[0] + idx[2] > 0) acc += m.data()[f];
      }
      return acc;
  }
  return acc;
}

namespace detail {

inline void validate_problem(const FluidProblem& p) {
  const int want = p.system == FluidSystem::fail_block ? 2 : p.system == FluidSystem::fail_timeout ? 3 : 1;
  if (p.unexplored.rank() != want) throw error(errc::invalid_parameter, "initial measure has the wrong rank");
  if (p.system == FluidSystem::poisson && p.unexplored.extent() != 1) {
    throw error(errc::invalid_parameter, "poisson state must be a single entry");
  }
  if (p.system == FluidSystem::fail_timeout &&
      (p.sans.rank() != 2 || p.sans.extent() != p.unexplored.extent())) {
    throw error(errc::invalid_parameter, "sans-CTS measure must be rank 2 with the same extent");
  }
  if (!(p.lambda > 0.0) || !std::isfinite(p.lambda)) throw error(errc::invalid_parameter, "lambda must be positive");
  auto check = [](const DegreeMeasure& m) {
    if (!m.is_nonnegative(0.0 + DegreeMeasure::clip_tolerance)) {
      throw error(errc::invalid_parameter, "initial measure has negative entries");
    }
    // Index shifts stay inside the box only if every total degree fits.
    if (m.rank() > 1) {
      for (std::size_t f = 0; f < m.size(); ++f) {
        const auto idx = m.index(f);
        if (m.data()[f] != 0.0 && idx[0] + idx[1] + idx[2] >= m.extent()) {
          throw error(errc::invalid_parameter, "total degree exceeds the measure extent");
        }
      }
    }
  };
  check(p.unexplored);
  if (p.system == FluidSystem::fail_timeout) check(p.sans);
}

// Packs (unexplored, sans, c_bar) into one flat state vector.
struct StateLayout {
  std::size_t n_unexplored = 0;
  std::size_t n_sans = 0;
  std::size_t size() const { return n_unexplored + n_sans + 1; }
};

}  // namespace detail

/// Integrates the fluid system with an adaptive Dormand-Prince 4(5) stepper,
/// carrying c_bar as an extra state variable, until both the CTS flow and
/// the useful unexplored mass fall below `opts.stop_mass`.
inline FluidSolution integrate(const FluidProblem& problem, const IntegrateOptions& opts = {}) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  detail::validate_problem(problem);

  const detail::StateLayout lay{problem.unexplored.size(),
                                problem.system == FluidSystem::fail_timeout ? problem.sans.size() : 0};
  DegreeMeasure m = problem.unexplored;
  DegreeMeasure s = problem.system == FluidSystem::fail_timeout ? problem.sans : DegreeMeasure(2, 1);
  const double lambda = problem.lambda;

  auto unpack = [&](const State& x) {
    std::copy_n(x.begin(), lay.n_unexplored, m.data().begin());
    if (lay.n_sans) std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(lay.n_unexplored), lay.n_sans, s.data().begin());
  };

  auto system = [&](const State& x, State& dx, double /*t*/) {
    unpack(x);
    std::fill(dx.begin(), dx.end(), 0.0);
    auto put = [&](const DegreeMeasure& d, std::size_t offset) {
      std::copy(d.data().begin(), d.data().end(), dx.begin() + static_cast<std::ptrdiff_t>(offset));
    };
    switch (problem.system) {
      case FluidSystem::parking: put(rhs_parking(m, lambda), 0); break;
      case FluidSystem::sender_receiver: put(rhs_sender_receiver(m, lambda), 0); break;
      case FluidSystem::poisson: dx[0] = rhs_poisson(m(0), problem.nu, lambda); break;
      case FluidSystem::fail_block: put(rhs_fail_block(m, lambda), 0); break;
      case FluidSystem::fail_timeout: {
        const auto d = rhs_fail_timeout(m, s, lambda);
        put(d.unexplored, 0);
        put(d.sans, lay.n_unexplored);
        break;
      }
    }
    dx.back() = lambda * cts_flow(problem, m);
  };

  State x(lay.size(), 0.0);
  std::copy(problem.unexplored.data().begin(), problem.unexplored.data().end(), x.begin());
  if (lay.n_sans) {
    std::copy(problem.sans.data().begin(), problem.sans.data().end(),
              x.begin() + static_cast<std::ptrdiff_t>(lay.n_unexplored));
  }

  FluidSolution sol;
  sol.system = problem.system;
  sol.lambda = lambda;
  auto record = [&](double t) {
    unpack(x);
    sol.times.push_back(t);
    sol.c_bar.push_back(x.back());
    sol.unexplored_mass.push_back(m.total());
    if (opts.record_trajectory) {
      sol.trajectory.push_back(m);
      if (lay.n_sans) sol.sans_trajectory.push_back(s);
    }
  };
  auto finished = [&] {
    unpack(x);
    return cts_flow(problem, m) < opts.stop_mass && useful_mass(problem, m) < opts.stop_mass;
  };

  auto stepper = odeint::make_controlled(opts.abs_tol, opts.rel_tol, opts.max_step,
                                         odeint::runge_kutta_dopri5<State>());
  double t = 0.0;
  double dt = opts.initial_step;
  record(t);
  while (!finished()) {
    if (sol.steps >= opts.max_steps) throw error(errc::stiff_failure, "step budget exhausted");
    const auto outcome = stepper.try_step(system, x, t, dt);
    if (outcome == odeint::fail) {
      if (dt < 1e-14 * std::max(1.0, t)) throw error(errc::stiff_failure, "step size underflow");
      continue;
    }
    ++sol.steps;
    // Mass entries only; c_bar is the last element.
    const auto lowest = *std::min_element(x.begin(), x.end() - 1);
    sol.min_entry_before_clip = std::min(sol.min_entry_before_clip, lowest);
    if (lowest < -opts.instability_tol) throw error(errc::instability, "negative mass beyond tolerance");
    if (lowest < 0.0) {
      for (auto it = x.begin(); it != x.end() - 1; ++it) *it = std::max(*it, 0.0);
      stepper.reset();
    }
    record(t);
  }
  if (!opts.record_trajectory) {
    sol.trajectory.push_back(m);
    if (lay.n_sans) sol.sans_trajectory.push_back(s);
  }
  unpack(x);
  sol.final_unexplored = m;
  if (lay.n_sans) sol.final_sans = s;
  sol.theta = theta_from_solution(sol);
  return sol;
}

}  // namespace srl
