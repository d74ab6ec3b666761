#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "srl/graph/interference_graph.hpp"
#include "srl/mac/types.hpp"
#include "srl/random.hpp"

namespace srl {

struct NoObserver {
  void operator()(std::span<const NodeState>) const noexcept {}
};

namespace detail {

inline bool can_receive(NodeState s, Variant v) {
  return s == NodeState::unexplored || (v == Variant::fail_timeout && s == NodeState::sans_cts);
}

/// Marks every neighbor of `v` that is still competing (or receive-only) as blocked.
template <GraphLike G>
void block_neighbors(const G& g, NodeId v, std::vector<NodeState>& state) {
  for (NodeId w : g.neighbors(v)) {
    if (state[w] == NodeState::unexplored || state[w] == NodeState::sans_cts) {
      state[w] = NodeState::blocked;
    }
  }
}

}  // namespace detail

/// Simulates one contention period on a fixed graph.
///
/// Nodes attempt in a uniformly random order; only the order of the
/// exponential timers matters, so a permutation stands in for them. A node
/// acts only if it is still unexplored when its turn comes. `observe` sees the
/// state vector after every turn, acting or not, so the k-th call corresponds
/// to the k-th clock ring.
template <GraphLike G, class Observer = NoObserver>
SlotOutcome run_slot(const G& g, Variant variant, Seed seed, Observer&& observe = {}) {
  const std::size_t n = g.size();
  Rng rng = make_rng(seed);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin(), order.end(), rng);

  SlotOutcome out;
  auto& state = out.final_states;
  state.assign(n, NodeState::unexplored);
  std::vector<NodeId> candidates;

  auto succeed = [&](NodeId s, NodeId r) {
    state[s] = NodeState::active;
    state[r] = NodeState::active;
    detail::block_neighbors(g, s, state);
    detail::block_neighbors(g, r, state);
    out.pairs.emplace_back(s, r);
    ++out.cts_count;
  };

  for (NodeId s : order) {
    if (state[s] != NodeState::unexplored) {
      observe(std::span<const NodeState>(state));
      continue;
    }
    ++out.rts_count;
    const auto nbrs = g.neighbors(s);
    switch (variant) {
      case Variant::ideal_retry: {
        state[s] = NodeState::active;
        candidates.clear();
        for (NodeId r : nbrs) {
          if (state[r] == NodeState::unexplored) candidates.push_back(r);
        }
        if (!candidates.empty()) succeed(s, candidates[uniform_index(rng, candidates.size())]);
        break;
      }
      case Variant::fail_block: {
        state[s] = NodeState::blocked;
        if (nbrs.empty()) break;
        const NodeId r = nbrs[uniform_index(rng, nbrs.size())];
        if (state[r] == NodeState::unexplored) {
          succeed(s, r);
        } else {
          detail::block_neighbors(g, s, state);
        }
        break;
      }
      case Variant::fail_timeout: {
        state[s] = NodeState::sans_cts;
        if (nbrs.empty()) break;
        const NodeId r = nbrs[uniform_index(rng, nbrs.size())];
        if (r != s && detail::can_receive(state[r], variant)) succeed(s, r);
        break;
      }
    }
    observe(std::span<const NodeState>(state));
  }
  out.theta = n == 0 ? 0.0 : static_cast<double>(out.cts_count) / static_cast<double>(n);
  return out;
}

}  // namespace srl
