#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "srl/error.hpp"
#include "srl/graph/interference_graph.hpp"
#include "srl/mac/types.hpp"

namespace srl {

namespace detail {

// Exhaustive enumeration, written independently of run_slot so that it can
// serve as a reference for it.
class ThetaEnumerator {
 public:
  static constexpr std::size_t max_nodes = 10;

  ThetaEnumerator(const InterferenceGraph& g, Variant variant) : g_(g), variant_(variant) {}

  /// Expected number of successful handshakes for one fixed attempt order.
  double expected_successes(const std::vector<NodeId>& order) {
    order_ = &order;
    std::array<char, max_nodes> st{};
    st.fill('U');
    return descend(0, st);
  }

 private:
  using States = std::array<char, max_nodes>;

  double descend(std::size_t pos, States st) {
    const auto& order = *order_;
    while (pos < order.size() && st[order[pos]] != 'U') ++pos;
    if (pos == order.size()) return 0.0;
    const NodeId s = order[pos];
    const auto nbrs = g_.neighbors(s);

    if (variant_ == Variant::ideal_retry) {
      st[s] = 'A';
      std::vector<NodeId> open;
      for (NodeId r : nbrs) {
        if (st[r] == 'U') open.push_back(r);
      }
      if (open.empty()) return descend(pos + 1, st);
      double acc = 0.0;
      for (NodeId r : open) acc += 1.0 + descend(pos + 1, paired(st, s, r));
      return acc / static_cast<double>(open.size());
    }

    if (nbrs.empty()) {
      st[s] = variant_ == Variant::fail_block ? 'B' : 'S';
      return descend(pos + 1, st);
    }
    double acc = 0.0;
    for (NodeId r : nbrs) {
      const bool answers = st[r] == 'U' || (variant_ == Variant::fail_timeout && st[r] == 'S');
      if (answers) {
        acc += 1.0 + descend(pos + 1, paired(st, s, r));
      } else if (variant_ == Variant::fail_block) {
        States next = st;
        next[s] = 'B';
        for (NodeId w : nbrs) {
          if (next[w] == 'U') next[w] = 'B';
        }
        acc += descend(pos + 1, next);
      } else {
        States next = st;
        next[s] = 'S';
        acc += descend(pos + 1, next);
      }
    }
    return acc / static_cast<double>(nbrs.size());
  }

  States paired(States st, NodeId s, NodeId r) const {
    st[s] = 'A';
    st[r] = 'A';
    for (NodeId w : g_.neighbors(s)) {
      if (st[w] == 'U' || st[w] == 'S') st[w] = 'B';
    }
    for (NodeId w : g_.neighbors(r)) {
      if (st[w] == 'U' || st[w] == 'S') st[w] = 'B';
    }
    return st;
  }

  const InterferenceGraph& g_;
  Variant variant_;
  const std::vector<NodeId>* order_ = nullptr;
};

}  // namespace detail

/// Exact E[theta] over all n! attempt orders and every receiver choice.
/// Limited to graphs with at most 10 nodes.
inline double brute_force_theta(const InterferenceGraph& g, Variant variant) {
  const std::size_t n = g.size();
  if (n > detail::ThetaEnumerator::max_nodes) {
    throw error(errc::oracle_limit, "exhaustive enumeration is limited to 10 nodes");
  }
  if (n == 0) return 0.0;
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  detail::ThetaEnumerator enumerator(g, variant);
  double total = 0.0;
  std::size_t orders = 0;
  do {
    total += enumerator.expected_successes(order);
    ++orders;
  } while (std::next_permutation(order.begin(), order.end()));
  return total / static_cast<double>(orders) / static_cast<double>(n);
}

}  // namespace srl
