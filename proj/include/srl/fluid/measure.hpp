#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "srl/error.hpp"
#include "srl/graph/degree_distribution.hpp"

namespace srl {

/// Dense mass array over degree multi-indices (i), (i, j) or (i, j, k), each
/// coordinate in 0..extent-1, stored row-major.
///
/// The same type carries signed derivatives returned by the right-hand-side
/// evaluators; `is_nonnegative()` is the measure invariant.
class DegreeMeasure {
 public:
  static constexpr double clip_tolerance = 1e-12;

  DegreeMeasure() = default;
  DegreeMeasure(int rank, std::size_t extent) : rank_(rank), extent_(extent) {
    if (rank < 1 || rank > 3) throw error(errc::invalid_parameter, "measure rank must be 1, 2 or 3");
    if (extent == 0) throw error(errc::invalid_parameter, "measure extent must be positive");
    std::size_t size = 1;
    for (int r = 0; r < rank; ++r) size *= extent;
    mass_.assign(size, 0.0);
  }

  /// Embeds a degree law on the first axis with every other coordinate 0.
  /// `extent` defaults to the support size of the law.
  static DegreeMeasure from_distribution(const DegreeDistribution& dist, int rank = 1,
                                         std::size_t extent = 0, double scale = 1.0) {
    if (extent == 0) extent = dist.support_size();
    if (extent < dist.support_size()) throw error(errc::invalid_parameter, "extent smaller than support");
    DegreeMeasure m(rank, extent);
    for (std::size_t i = 0; i < dist.support_size(); ++i) m.mass_[m.flat(i, 0, 0)] = scale * dist[i];
    return m;
  }

  /// Rank-1 measure from explicit masses.
  static DegreeMeasure from_masses(std::vector<double> masses) {
    DegreeMeasure m(1, masses.size());
    m.mass_ = std::move(masses);
    return m;
  }

  int rank() const noexcept { return rank_; }
  std::size_t extent() const noexcept { return extent_; }
  std::size_t size() const noexcept { return mass_.size(); }
  bool same_shape(const DegreeMeasure& o) const noexcept {
    return rank_ == o.rank_ && extent_ == o.extent_;
  }

  std::span<double> data() noexcept { return mass_; }
  std::span<const double> data() const noexcept { return mass_; }

  std::size_t flat(std::size_t i, std::size_t j = 0, std::size_t k = 0) const noexcept {
    switch (rank_) {
      case 1: return i;
      case 2: return i * extent_ + j;
      default: return (i * extent_ + j) * extent_ + k;
    }
  }

  /// Multi-index of flat position `f`; unused trailing coordinates are 0.
  std::array<std::size_t, 3> index(std::size_t f) const noexcept {
    std::array<std::size_t, 3> idx{0, 0, 0};
    for (int r = rank_ - 1; r >= 0; --r) {
      idx[static_cast<std::size_t>(r)] = f % extent_;
      f /= extent_;
    }
    return idx;
  }

  double& operator()(std::size_t i, std::size_t j = 0, std::size_t k = 0) noexcept {
    return mass_[flat(i, j, k)];
  }
  double operator()(std::size_t i, std::size_t j = 0, std::size_t k = 0) const noexcept {
    return mass_[flat(i, j, k)];
  }

  /// Zero outside the box.
  double at(std::ptrdiff_t i, std::ptrdiff_t j = 0, std::ptrdiff_t k = 0) const noexcept {
    const auto e = static_cast<std::ptrdiff_t>(extent_);
    if (i < 0 || j < 0 || k < 0 || i >= e || j >= e || k >= e) return 0.0;
    return mass_[flat(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k))];
  }

  double total() const noexcept {
    double acc = 0.0;
    for (double x : mass_) acc += x;
    return acc;
  }

  /// Sum of (coordinate `axis`) * mass.
  double axis_moment(int axis) const noexcept {
    double acc = 0.0;
    for (std::size_t f = 0; f < mass_.size(); ++f) {
      acc += static_cast<double>(index(f)[static_cast<std::size_t>(axis)]) * mass_[f];
    }
    return acc;
  }

  double min_entry() const noexcept { return *std::min_element(mass_.begin(), mass_.end()); }

  bool is_nonnegative(double tol = clip_tolerance) const noexcept { return min_entry() > -tol; }

  /// Sets entries in (-tol, 0) to zero; deeper negatives are left untouched.
  void clip(double tol = clip_tolerance) noexcept {
    for (double& x : mass_) {
      if (x < 0.0 && x > -tol) x = 0.0;
    }
  }

  /// Sum over the trailing axes, leaving a rank-1 measure over the first one.
  DegreeMeasure first_axis_marginal() const {
    DegreeMeasure out(1, extent_);
    for (std::size_t f = 0; f < mass_.size(); ++f) out.mass_[index(f)[0]] += mass_[f];
    return out;
  }

  /// Sum over the last axis (rank 3 -> rank 2, rank 2 -> rank 1).
  DegreeMeasure drop_last_axis() const {
    if (rank_ == 1) throw error(errc::invalid_parameter, "cannot drop the only axis");
    DegreeMeasure out(rank_ - 1, extent_);
    for (std::size_t f = 0; f < mass_.size(); ++f) out.mass_[f / extent_] += mass_[f];
    return out;
  }

  DegreeMeasure& operator+=(const DegreeMeasure& o) {
    for (std::size_t f = 0; f < mass_.size(); ++f) mass_[f] += o.mass_[f];
    return *this;
  }
  DegreeMeasure& operator*=(double s) {
    for (double& x : mass_) x *= s;
    return *this;
  }

  friend bool operator==(const DegreeMeasure&, const DegreeMeasure&) = default;

 private:
  int rank_ = 1;
  std::size_t extent_ = 0;
  std::vector<double> mass_;
};

/// Degree law of a uniformly chosen node: mass / total mass.
inline DegreeMeasure alpha_of(const DegreeMeasure& m) {
  const double total = m.total();
  if (!(total > 0.0)) throw error(errc::empty_measure, "measure has zero total mass");
  DegreeMeasure out = m;
  out *= 1.0 / total;
  return out;
}

/// Size-biased law along coordinate `axis`: the node at the far end of a
/// uniformly chosen half-edge of that type.
inline DegreeMeasure beta_of(const DegreeMeasure& m, int axis = 0) {
  if (axis < 0 || axis >= m.rank()) throw error(errc::invalid_parameter, "axis out of range");
  const double first = m.axis_moment(axis);
  if (!(first > 0.0)) throw error(errc::no_edges, "measure has zero first moment along the axis");
  DegreeMeasure out = m;
  auto d = out.data();
  for (std::size_t f = 0; f < d.size(); ++f) {
    d[f] *= static_cast<double>(m.index(f)[static_cast<std::size_t>(axis)]) / first;
  }
  return out;
}

}  // namespace srl
