#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "srl/error.hpp"
#include "srl/graph/degree_distribution.hpp"

namespace srl {

/// Regularity conditions on the initial degree law of the fluid limit.
struct AssumptionReport {
  bool passed = false;
  double first_moment = 0.0;
  double sixth_moment = 0.0;
  std::string reason;  // empty when passed
};

/// Passes iff the first moment is positive; support is finite by
/// construction, so every moment (the sixth in particular) is finite.
inline AssumptionReport check_assumption(const DegreeDistribution& dist) {
  AssumptionReport r;
  r.first_moment = moment(dist, 1);
  r.sixth_moment = moment(dist, 6);
  if (!(r.first_moment > 0.0)) {
    r.reason = "first moment is zero";
  } else if (!std::isfinite(r.sixth_moment)) {
    r.reason = "sixth moment is not finite";
  } else {
    r.passed = true;
  }
  return r;
}

/// Poisson(nu) cut at the smallest D whose tail mass P(X > D) is below
/// `tail_tol`, renormalized.
inline DegreeDistribution truncate_poisson(double nu, double tail_tol = 1e-10) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw error(errc::invalid_parameter, "nu must be finite and nonnegative");
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw error(errc::invalid_parameter, "tail_tol must lie in (0, 1)");
  if (nu == 0.0) return DegreeDistribution::delta(0);
  std::vector<double> pmf;
  double p = std::exp(-nu);
  for (std::size_t i = 0;; ++i) {
    if (i > 0) p *= nu / static_cast<double>(i);
    pmf.push_back(p);
    // Summed directly; 1 - cdf would cancel long before tail_tol.
    double tail = 0.0;
    double q = p;
    for (std::size_t j = i + 1; j < i + 2000; ++j) {
      q *= nu / static_cast<double>(j);
      tail += q;
      if (q < tail * 1e-17) break;
    }
    if (tail < tail_tol) break;
  }
  return DegreeDistribution::from_weights(std::move(pmf));
}

}  // namespace srl
