#pragma once

#include <cmath>
#include <cstddef>

#include "srl/error.hpp"
#include "srl/fluid/measure.hpp"

namespace srl {

// Right-hand sides of the large-graph fluid systems. Every measure is scaled
// by the node count, so total mass is the unexplored fraction. Each function
// returns d/dt of its input with the same shape.

/// Which outcome of the transmitter's handshake contributes to a derivative.
enum class Branch { all, success, failure };

namespace detail {

inline void require_rank(const DegreeMeasure& m, int rank, const char* what) {
  if (m.rank() != rank) throw error(errc::invalid_parameter, what);
}

// Expectation of f(coordinate) under a size-biased law given as raw weights.
inline double ratio_or_zero(double num, double den) { return den > 0.0 ? num / den : 0.0; }

// out(i..) -= c * law(i..) and out(i-di, j-dj, k-dk) += c * law(i..), i.e.
// mass distributed as `law` moves by (di, dj, dk). Moves that would leave
// the box are impossible when every total degree is below the extent.
inline void shift(DegreeMeasure& out, const DegreeMeasure& law, double c, int di, int dj, int dk) {
  if (c == 0.0) return;
  const auto e = static_cast<std::ptrdiff_t>(law.extent());
  const auto src = law.data();
  auto dst = out.data();
  const int rank = law.rank();
  for (std::size_t f = 0; f < src.size(); ++f) {
    const double w = src[f];
    if (w == 0.0) continue;
    const auto idx = law.index(f);
    const std::ptrdiff_t i = static_cast<std::ptrdiff_t>(idx[0]) + di;
    const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(idx[1]) + dj;
    const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(idx[2]) + dk;
    dst[f] -= c * w;
    if (i < 0 || i >= e || (rank > 1 && (j < 0 || j >= e)) || (rank > 2 && (k < 0 || k >= e))) continue;
    dst[out.flat(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k))] +=
        c * w;
  }
}

inline void axpy(DegreeMeasure& out, double c, const DegreeMeasure& x) {
  if (c == 0.0) return;
  auto d = out.data();
  const auto s = x.data();
  for (std::size_t f = 0; f < d.size(); ++f) d[f] += c * s[f];
}

// Size-biased law along `axis`, or all zeros when there is no such half-edge.
inline DegreeMeasure beta_or_zero(const DegreeMeasure& m, int axis) {
  if (m.axis_moment(axis) > 0.0) return beta_of(m, axis);
  return DegreeMeasure(m.rank(), m.extent());
}

}  // namespace detail

/// Parking process (transmitter only, no receiver), in closed form.
inline DegreeMeasure rhs_parking(const DegreeMeasure& m, double lambda) {
  detail::require_rank(m, 1, "parking system needs a rank-1 measure");
  const std::size_t e = m.extent();
  DegreeMeasure d(1, e);
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t j = 0; j < e; ++j) {
    s1 += static_cast<double>(j) * m(j);
    s2 += static_cast<double>(j * j) * m(j);
  }
  if (!(s1 > 0.0)) {
    d(0) = -lambda * m(0);
    return d;
  }
  const double excess = s2 / s1 - 1.0;
  for (std::size_t i = 0; i < e; ++i) {
    const double di = static_cast<double>(i);
    const double next = i + 1 < e ? (di + 1.0) * m(i + 1) : 0.0;
    d(i) = -lambda * (m(i) + di * m(i) + (di * m(i) - next) * excess);
  }
  return d;
}

/// Sender-receiver system for the ideal-retry protocol, closed bracket form.
inline DegreeMeasure rhs_sender_receiver(const DegreeMeasure& m, double lambda) {
  detail::require_rank(m, 1, "sender-receiver system needs a rank-1 measure");
  const std::size_t e = m.extent();
  const double total = m.total();
  if (!(total > 0.0)) return DegreeMeasure(1, e);
  if (!(m.axis_moment(0) > 0.0)) return rhs_parking(m, lambda);

  const DegreeMeasure a = alpha_of(m);
  const DegreeMeasure b = beta_of(m);
  double mean_tx = 0.0;      // sum_j j alpha(j)
  double excess_one = 0.0;   // sum_j (j-1) beta(j)
  for (std::size_t j = 0; j < e; ++j) {
    mean_tx += static_cast<double>(j) * a(j);
    excess_one += (static_cast<double>(j) - 1.0) * b(j);
  }
  const double excess_two = excess_one - 1.0;  // sum_j (j-2) beta(j)
  const double has_rx = 1.0 - a(0);
  const double direct = mean_tx + has_rx * excess_one;
  const double shifted = excess_one * (mean_tx + has_rx * excess_two);

  DegreeMeasure d(1, e);
  for (std::size_t i = 0; i < e; ++i) {
    const double b_next = i + 1 < e ? b(i + 1) : 0.0;
    d(i) = -lambda * total * (a(i) + b(i) * direct + (b(i) - b_next) * shifted);
  }
  return d;
}

/// Same system assembled term by term from the expected blocking counts:
/// transmitter removal, Y (blocked neighbors) and X (their unexplored
/// neighbors, each losing one half-edge) for transmitter and receiver.
inline DegreeMeasure rhs_sender_receiver_expectation(const DegreeMeasure& m, double lambda) {
  detail::require_rank(m, 1, "sender-receiver system needs a rank-1 measure");
  const std::size_t e = m.extent();
  const double total = m.total();
  if (!(total > 0.0)) return DegreeMeasure(1, e);
  if (!(m.axis_moment(0) > 0.0)) return rhs_parking(m, lambda);

  const DegreeMeasure a = alpha_of(m);
  const DegreeMeasure b = beta_of(m);
  const double p_tx_has_nbr = 1.0 - a(0);  // P(K_tx > 0)
  double e_k_tx = 0.0;
  for (std::size_t j = 0; j < e; ++j) e_k_tx += static_cast<double>(j) * a(j);
  double e_k_rx_minus_one = 0.0;  // E[(K_rx - 1)^+], K_rx ~ beta
  for (std::size_t j = 1; j < e; ++j) e_k_rx_minus_one += (static_cast<double>(j) - 1.0) * b(j);

  std::vector<double> y_tx(e), y_rx(e), x_tx(e + 1, 0.0), x_rx(e + 1, 0.0);
  for (std::size_t i = 0; i < e; ++i) {
    y_tx[i] = e_k_tx * b(i);
    y_rx[i] = e_k_rx_minus_one * b(i);
  }
  // Neighbors of blocked nodes: tx's blocked neighbors other than rx, and
  // rx's blocked neighbors, each with (l - 1) further half-edges.
  double z_tx = 0.0;
  double z_rx = 0.0;
  for (std::size_t l = 1; l < e; ++l) {
    const double rx_at_l = p_tx_has_nbr * b(l);  // P(K_rx = l)
    z_tx += (static_cast<double>(l) - 1.0) * (y_tx[l] - rx_at_l);
    z_rx += (static_cast<double>(l) - 1.0) * y_rx[l];
  }
  for (std::size_t j = 0; j < e; ++j) {
    x_tx[j] = z_tx * b(j);
    x_rx[j] = z_rx * b(j);
  }

  DegreeMeasure d(1, e);
  for (std::size_t i = 0; i < e; ++i) {
    const double tx_part = a(i) + y_tx[i] + x_tx[i] - x_tx[i + 1];
    const double rx_part = y_rx[i] + x_rx[i] - x_rx[i + 1];
    d(i) = -lambda * total * (tx_part + p_tx_has_nbr * rx_part);
  }
  return d;
}

/// Collapsed scalar system for Poisson(nu) degrees: u is the unexplored fraction.
inline double rhs_poisson(double u, double nu, double lambda) {
  const double x = nu * u;
  return -lambda * u * (1.0 + 2.0 * x - std::exp(-x) * x);
}

/// Probability that an unexplored node with `u` edges to unexplored nodes and
/// `other` edges elsewhere draws a receiver that can answer.
inline double answer_probability(std::size_t answering, std::size_t total) {
  return answering == 0 ? 0.0 : static_cast<double>(answering) / static_cast<double>(total);
}

/// Handshake-failure-blocks system on mu(i, j): i edges toward unexplored
/// nodes, j toward blocked ones. `branch` selects the success or failure
/// contributions; their sum is the full derivative.
inline DegreeMeasure rhs_fail_block(const DegreeMeasure& m, double lambda, Branch branch = Branch::all) {
  detail::require_rank(m, 2, "fail-block system needs a rank-2 measure");
  const std::size_t e = m.extent();
  DegreeMeasure d(2, e);
  const double total = m.total();
  if (!(total > 0.0)) return d;

  const DegreeMeasure a = alpha_of(m);
  const DegreeMeasure b = detail::beta_or_zero(m, 0);
  double p_cts = 0.0;      // sum_{k>0,l} k/(k+l) alpha(k,l)
  double mean_u = 0.0;     // sum k alpha(k,l), first-coordinate marginal mean
  double succ_u = 0.0;     // E[K_u ; CTS]
  double excess_one = 0.0; // sum (k-1) beta(k,l)
  for (std::size_t k = 0; k < e; ++k) {
    for (std::size_t l = 0; l < e; ++l) {
      const double ps = answer_probability(k, k + l);
      p_cts += ps * a(k, l);
      mean_u += static_cast<double>(k) * a(k, l);
      succ_u += static_cast<double>(k) * ps * a(k, l);
      excess_one += (static_cast<double>(k) - 1.0) * b(k, l);
    }
  }
  const bool edges = m.axis_moment(0) > 0.0;
  if (!edges) excess_one = 0.0;
  const double excess_two = edges ? excess_one - 1.0 : 0.0;

  // Transmitter removal and the coefficients multiplying beta (direct
  // blocking) and beta(i,j) - beta(i+1,j-1) (neighbor-of-blocked shift).
  double direct = 0.0;
  double shifted = 0.0;
  switch (branch) {
    case Branch::all:
      direct = mean_u + p_cts * excess_one;
      shifted = excess_one * (mean_u + p_cts * excess_two);
      break;
    case Branch::success:
      direct = succ_u + p_cts * excess_one;
      shifted = excess_one * (succ_u + p_cts * excess_two);
      break;
    case Branch::failure:
      direct = mean_u - succ_u;
      shifted = excess_one * (mean_u - succ_u);
      break;
  }
  for (std::size_t i = 0; i < e; ++i) {
    for (std::size_t j = 0; j < e; ++j) {
      const double ps = answer_probability(i, i + j);
      const double tx_weight = branch == Branch::all ? 1.0 : branch == Branch::success ? ps : 1.0 - ps;
      const double b_from = j > 0 && i + 1 < e ? b(i + 1, j - 1) : 0.0;
      d(i, j) = -lambda * total * (tx_weight * a(i, j) + direct * b(i, j) + shifted * (b(i, j) - b_from));
    }
  }
  return d;
}

/// Derivatives of the timeout system: unexplored nodes mu(i, j, k) with i
/// edges toward unexplored, j toward blocked and k toward sans-CTS nodes, and
/// sans-CTS nodes nu(i, k) with i edges toward unexplored and k toward sans-CTS.
struct TimeoutDerivative {
  DegreeMeasure unexplored;
  DegreeMeasure sans;
};

/// Half-edge balance tolerance between the u->s and s->u totals.
inline constexpr double timeout_consistency_tolerance = 1e-9;

inline TimeoutDerivative rhs_fail_timeout(const DegreeMeasure& m, const DegreeMeasure& s, double lambda,
                                          Branch branch = Branch::all) {
  detail::require_rank(m, 3, "timeout system needs a rank-3 unexplored measure");
  detail::require_rank(s, 2, "timeout system needs a rank-2 sans-CTS measure");
  if (m.extent() != s.extent()) throw error(errc::invalid_parameter, "measure extents differ");
  const std::size_t e = m.extent();
  TimeoutDerivative d{DegreeMeasure(3, e), DegreeMeasure(2, e)};

  const double u_to_s = m.axis_moment(2);
  const double s_to_u = s.axis_moment(0);
  if (std::abs(u_to_s - s_to_u) > timeout_consistency_tolerance) {
    throw error(errc::inconsistent_state, "u->s and s->u half-edge totals differ");
  }
  const double total = m.total();
  if (!(total > 0.0)) return d;

  const bool want_success = branch != Branch::failure;
  const bool want_failure = branch != Branch::success;
  const DegreeMeasure a = alpha_of(m);

  // Far-end laws: unexplored node reached over u->u (along i) or over s->u
  // (along k); sans node reached over u->s (along i) or s->s (along k).
  const DegreeMeasure bu_i = detail::beta_or_zero(m, 0);
  const DegreeMeasure bu_k = detail::beta_or_zero(m, 2);
  const DegreeMeasure bs_i = detail::beta_or_zero(s, 0);
  const DegreeMeasure bs_k = detail::beta_or_zero(s, 1);

  // Transmitter statistics over alpha.
  double to_u = 0.0;     // P(CTS, receiver unexplored)
  double to_s = 0.0;     // P(CTS, receiver sans-CTS)
  double succ_u = 0.0;   // E[K_u ; CTS]
  double succ_s = 0.0;   // E[K_s ; CTS]
  double fail_u = 0.0;   // E[K_u ; no CTS]
  double fail_s = 0.0;   // E[K_s ; no CTS]
  for (std::size_t i = 0; i < e; ++i) {
    for (std::size_t j = 0; j < e; ++j) {
      for (std::size_t k = 0; k < e; ++k) {
        const double w = a(i, j, k);
        if (w == 0.0) continue;
        const std::size_t deg = i + j + k;
        const double pu = answer_probability(i, deg);
        const double psans = answer_probability(k, deg);
        const double ps = pu + psans;
        to_u += w * pu;
        to_s += w * psans;
        succ_u += w * static_cast<double>(i) * ps;
        succ_s += w * static_cast<double>(k) * ps;
        fail_u += w * static_cast<double>(i) * (1.0 - ps);
        fail_s += w * static_cast<double>(k) * (1.0 - ps);
      }
    }
  }

  // Remaining half-edge counts of a node reached over one of its edges.
  auto mean_along = [](const DegreeMeasure& law, int axis, double offset) {
    double acc = 0.0;
    double mass = 0.0;
    const auto data = law.data();
    for (std::size_t f = 0; f < data.size(); ++f) {
      acc += (static_cast<double>(law.index(f)[static_cast<std::size_t>(axis)]) + offset) * data[f];
      mass += data[f];
    }
    return detail::ratio_or_zero(acc, mass);
  };
  const double ui_u = mean_along(bu_i, 0, -1.0);  // u-node via u->u: other u->u edges
  const double ui_s = mean_along(bu_i, 2, 0.0);   //                  u->s edges
  const double uk_u = mean_along(bu_k, 0, 0.0);   // u-node via u->s: u->u edges
  const double uk_s = mean_along(bu_k, 2, -1.0);  //                  other u->s edges
  const double si_u = mean_along(bs_i, 0, -1.0);  // s-node via s->u: other s->u edges
  const double si_s = mean_along(bs_i, 1, 0.0);   //                  s->s edges
  const double sk_u = mean_along(bs_k, 0, 0.0);   // s-node via s->s: s->u edges
  const double sk_s = mean_along(bs_k, 1, -1.0);  //                  other s->s edges

  auto& du = d.unexplored;
  auto& ds = d.sans;

  if (want_success) {
    // Removed from mu: tx's unexplored neighbors (rx among them when it is
    // unexplored) and the unexplored neighbors of rx.
    const double gone_u_via_u = succ_u + to_u * ui_u;
    const double gone_u_via_s = to_s * si_u;
    const double gone_s_via_u = succ_s + to_u * ui_s;
    const double gone_s_via_s = to_s * si_s;
    // Blocked nodes (not the receiver), by how they were reached.
    const double blocked_u_via_u = (succ_u - to_u) + to_u * ui_u;
    const double blocked_u_via_s = to_s * si_u;
    const double blocked_s_via_u = (succ_s - to_s) + to_u * ui_s;
    const double blocked_s_via_s = to_s * si_s;
    // Their remaining edges turn the far ends' edges into edges toward blocked nodes.
    const double uu_to_ub = blocked_u_via_u * ui_u + blocked_u_via_s * uk_u;
    const double su_to_sb = blocked_u_via_u * ui_s + blocked_u_via_s * uk_s;
    const double us_to_ub = blocked_s_via_u * si_u + blocked_s_via_s * sk_u;
    const double ss_to_sb = blocked_s_via_u * si_s + blocked_s_via_s * sk_s;

    for (std::size_t f = 0; f < du.size(); ++f) {
      const auto idx = m.index(f);
      const double ps = answer_probability(idx[0] + idx[2], idx[0] + idx[1] + idx[2]);
      du.data()[f] -= ps * a.data()[f];
    }
    detail::axpy(du, -gone_u_via_u, bu_i);
    detail::axpy(du, -gone_u_via_s, bu_k);
    detail::axpy(ds, -gone_s_via_u, bs_i);
    detail::axpy(ds, -gone_s_via_s, bs_k);
    detail::shift(du, bu_i, uu_to_ub, -1, +1, 0);
    detail::shift(du, bu_k, us_to_ub, 0, +1, -1);
    detail::shift(ds, bs_i, su_to_sb, -1, 0, 0);
    detail::shift(ds, bs_k, ss_to_sb, 0, -1, 0);
  }

  if (want_failure) {
    // The transmitter becomes sans-CTS; the far ends of its u->u edges now
    // see a sans-CTS node, and its sans-CTS neighbors see one more.
    for (std::size_t i = 0; i < e; ++i) {
      for (std::size_t j = 0; j < e; ++j) {
        for (std::size_t k = 0; k < e; ++k) {
          const double w = a(i, j, k);
          if (w == 0.0) continue;
          const double fail = 1.0 - answer_probability(i + k, i + j + k);
          du(i, j, k) -= fail * w;
          ds(i, k) += fail * w;
        }
      }
    }
    detail::shift(du, bu_i, fail_u, -1, 0, +1);
    detail::shift(ds, bs_i, fail_s, -1, +1, 0);
  }

  du *= lambda * total;
  ds *= lambda * total;
  return d;
}

// Success-flow densities: dc/dt = lambda * (unexplored mass) * P(CTS).

inline double cts_flow_sender_receiver(const DegreeMeasure& m) {
  double acc = 0.0;
  for (std::size_t j = 1; j < m.extent(); ++j) acc += m(j);
  return acc;
}

inline double cts_flow_poisson(double u, double nu) { return (1.0 - std::exp(-nu * u)) * u; }

inline double cts_flow_fail_block(const DegreeMeasure& m) {
  double acc = 0.0;
  for (std::size_t k = 1; k < m.extent(); ++k) {
    for (std::size_t l = 0; l < m.extent(); ++l) acc += answer_probability(k, k + l) * m(k, l);
  }
  return acc;
}

inline double cts_flow_fail_timeout(const DegreeMeasure& m) {
  double acc = 0.0;
  const std::size_t e = m.extent();
  for (std::size_t i = 0; i < e; ++i) {
    for (std::size_t j = 0; j < e; ++j) {
      for (std::size_t k = 0; k < e; ++k) acc += answer_probability(i + k, i + j + k) * m(i, j, k);
    }
  }
  return acc;
}

}  // namespace srl
