#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "srl/error.hpp"
#include "srl/graph/degree_distribution.hpp"
#include "srl/graph/generators.hpp"
#include "srl/mac/types.hpp"
#include "srl/random.hpp"

namespace srl {

namespace detail {

/// Unmatched half-edges of a configuration model whose pairing is revealed
/// on demand. Every match draws its partner uniformly among all remaining
/// unmatched half-edges, which is the law of a uniform perfect matching.
class HalfEdgePool {
 public:
  explicit HalfEdgePool(const std::vector<std::uint32_t>& degrees) : first_(degrees.size() + 1, 0) {
    for (std::size_t v = 0; v < degrees.size(); ++v) first_[v + 1] = first_[v] + degrees[v];
    const std::size_t total = first_.back();
    owner_.resize(total);
    free_.resize(total);
    slot_.resize(total);
    for (std::size_t v = 0; v < degrees.size(); ++v) {
      for (std::size_t h = first_[v]; h < first_[v + 1]; ++h) owner_[h] = static_cast<NodeId>(v);
    }
    for (std::size_t h = 0; h < total; ++h) {
      free_[h] = h;
      slot_[h] = h;
    }
  }

  /// Pairs every still-unmatched half-edge of `v`; returns the far endpoints
  /// (with multiplicity, `v` itself for self-loops).
  template <class Engine>
  void reveal(NodeId v, Engine& rng, std::vector<NodeId>& far_ends) {
    far_ends.clear();
    for (std::size_t h = first_[v]; h < first_[v + 1]; ++h) {
      if (slot_[h] == npos) continue;
      take(h);
      const std::size_t g = free_[uniform_index(rng, free_.size())];
      take(g);
      far_ends.push_back(owner_[g]);
    }
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  void take(std::size_t h) {
    const std::size_t at = slot_[h];
    const std::size_t last = free_.back();
    free_[at] = last;
    slot_[last] = at;
    free_.pop_back();
    slot_[h] = npos;
  }

  std::vector<std::size_t> first_;
  std::vector<NodeId> owner_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> slot_;
};

}  // namespace detail

/// Ideal-retry contention period on a configuration-model graph built jointly
/// with the dynamics: edges are paired only when a transmitter, its receiver
/// or a newly blocked node needs them. Equal in law to run_slot on
/// sample_configuration_multigraph with the same degree law.
inline SlotOutcome run_slot_lazy(const DegreeDistribution& dist, std::size_t n, Variant variant,
                                 Seed seed) {
  if (variant != Variant::ideal_retry) {
    throw error(errc::invalid_parameter, "lazy construction supports the ideal-retry variant only");
  }
  Rng rng = make_rng(seed);
  const auto degrees = sample_degree_sequence(dist, n, rng);
  detail::HalfEdgePool pool(degrees);

  SlotOutcome out;
  auto& state = out.final_states;
  state.assign(n, NodeState::unexplored);

  // Unexplored nodes, for uniform selection of the next transmitter.
  std::vector<NodeId> waiting(n);
  std::vector<std::size_t> where(n);
  for (NodeId v = 0; v < n; ++v) waiting[v] = where[v] = v;
  auto leave = [&](NodeId v) {
    const std::size_t at = where[v];
    const NodeId last = waiting.back();
    waiting[at] = last;
    where[last] = at;
    waiting.pop_back();
  };

  std::vector<NodeId> tx_nbrs;
  std::vector<NodeId> rx_nbrs;
  std::vector<NodeId> scratch;
  std::vector<NodeId> candidates;
  std::vector<NodeId> newly_blocked;

  auto block = [&](NodeId v) {
    if (state[v] != NodeState::unexplored) return;
    state[v] = NodeState::blocked;
    leave(v);
    newly_blocked.push_back(v);
  };

  while (!waiting.empty()) {
    const NodeId s = waiting[uniform_index(rng, waiting.size())];
    leave(s);
    state[s] = NodeState::active;
    ++out.rts_count;

    pool.reveal(s, rng, tx_nbrs);
    candidates.clear();
    for (NodeId r : tx_nbrs) {
      if (state[r] == NodeState::unexplored) candidates.push_back(r);
    }
    if (candidates.empty()) continue;

    const NodeId r = candidates[uniform_index(rng, candidates.size())];
    leave(r);
    state[r] = NodeState::active;
    out.pairs.emplace_back(s, r);
    ++out.cts_count;

    pool.reveal(r, rng, rx_nbrs);
    newly_blocked.clear();
    for (NodeId v : tx_nbrs) block(v);
    for (NodeId v : rx_nbrs) block(v);
    // Blocked nodes drop out; their remaining stubs strip half-edges from
    // the unexplored nodes they land on.
    for (std::size_t k = 0; k < newly_blocked.size(); ++k) pool.reveal(newly_blocked[k], rng, scratch);
  }
  out.theta = static_cast<double>(out.cts_count) / static_cast<double>(n);
  return out;
}

}  // namespace srl
