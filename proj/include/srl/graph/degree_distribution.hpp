#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "srl/error.hpp"

namespace srl {

/// Finite-support probability mass function over node degrees 0..D.
///
/// Trailing zero masses are trimmed so that `max_degree()` is always the
/// largest degree with positive mass.
class DegreeDistribution {
 public:
  static constexpr double sum_tolerance = 1e-12;

  DegreeDistribution() : mass_{1.0} {}

  /// Validates and normalizes nothing: masses must already sum to one.
  explicit DegreeDistribution(std::vector<double> mass) : mass_(std::move(mass)) {
    trim();
    validate();
  }

  /// Accepts any nonnegative weights with positive total and rescales them.
  static DegreeDistribution from_weights(std::vector<double> weights) {
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw error(errc::invalid_parameter, "degree weights must be finite and nonnegative");
      }
      total += w;
    }
    if (!(total > 0.0)) throw error(errc::invalid_parameter, "degree weights sum to zero");
    for (double& w : weights) w /= total;
    return DegreeDistribution(std::move(weights));
  }

  static DegreeDistribution delta(std::size_t degree) {
    std::vector<double> m(degree + 1, 0.0);
    m[degree] = 1.0;
    return DegreeDistribution(std::move(m));
  }

  /// Equal mass on every degree in [lo, hi].
  static DegreeDistribution uniform(std::size_t lo, std::size_t hi) {
    if (lo > hi) throw error(errc::invalid_parameter, "uniform degree range is empty");
    std::vector<double> w(hi + 1, 0.0);
    for (std::size_t d = lo; d <= hi; ++d) w[d] = 1.0;
    return from_weights(std::move(w));
  }

  std::size_t max_degree() const noexcept { return mass_.size() - 1; }
  std::size_t support_size() const noexcept { return mass_.size(); }
  double operator[](std::size_t degree) const noexcept {
    return degree < mass_.size() ? mass_[degree] : 0.0;
  }
  const std::vector<double>& masses() const noexcept { return mass_; }

  friend bool operator==(const DegreeDistribution&, const DegreeDistribution&) = default;

 private:
  void trim() {
    while (mass_.size() > 1 && mass_.back() == 0.0) mass_.pop_back();
    if (mass_.empty()) throw error(errc::invalid_parameter, "empty degree distribution");
  }

  void validate() const {
    double total = 0.0;
    for (double m : mass_) {
      if (!(m >= 0.0) || !std::isfinite(m)) {
        throw error(errc::invalid_parameter, "degree masses must be finite and nonnegative");
      }
      total += m;
    }
    if (std::abs(total - 1.0) > sum_tolerance * static_cast<double>(mass_.size() + 1)) {
      throw error(errc::invalid_parameter, "degree masses must sum to one");
    }
  }

  std::vector<double> mass_;
};

/// Sum over i of i^k * mass(i).
inline double moment(const DegreeDistribution& dist, unsigned k) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.support_size(); ++i) {
    acc += std::pow(static_cast<double>(i), static_cast<double>(k)) * dist[i];
  }
  return acc;
}

inline double mean_degree(const DegreeDistribution& dist) { return moment(dist, 1); }

/// Total-variation distance between two finite pmfs.
inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    acc += std::abs(a - b);
  }
  return 0.5 * acc;
}

inline void write_csv(std::ostream& os, const DegreeDistribution& dist) {
  os << "degree,mass\n";
  os.precision(17);
  for (std::size_t i = 0; i < dist.support_size(); ++i) os << i << ',' << dist[i] << '\n';
}

inline DegreeDistribution read_distribution_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("degree,mass", 0) != 0) {
    throw error(errc::io, "degree distribution CSV must start with 'degree,mass'");
  }
  std::vector<double> mass;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t degree = 0;
    char comma = 0;
    double m = 0.0;
    if (!(row >> degree >> comma >> m) || comma != ',') {
      throw error(errc::io, "malformed degree distribution row: " + line);
    }
    if (mass.size() <= degree) mass.resize(degree + 1, 0.0);
    mass[degree] = m;
  }
  return DegreeDistribution::from_weights(std::move(mass));
}

}  // namespace srl
