#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srl/graph/interference_graph.hpp"

namespace srl {

/// How a transmitter reacts to a handshake that draws no CTS.
enum class Variant {
  ideal_retry,   // retries every unexplored neighbor instantly
  fail_block,    // one random receiver; neighbors stay blocked on failure
  fail_timeout,  // one random receiver; on failure the sender becomes receive-only
};

inline constexpr Variant all_variants[] = {Variant::ideal_retry, Variant::fail_block,
                                           Variant::fail_timeout};

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::ideal_retry: return "ideal";
    case Variant::fail_block: return "fail-block";
    case Variant::fail_timeout: return "fail-timeout";
  }
  return "?";
}

inline std::optional<Variant> parse_variant(std::string_view s) {
  if (s == "ideal" || s == "ideal-retry") return Variant::ideal_retry;
  if (s == "fail-block") return Variant::fail_block;
  if (s == "fail-timeout") return Variant::fail_timeout;
  return std::nullopt;
}

enum class NodeState : std::uint8_t { unexplored, active, blocked, sans_cts };

inline std::string_view to_string(NodeState s) {
  switch (s) {
    case NodeState::unexplored: return "unexplored";
    case NodeState::active: return "active";
    case NodeState::blocked: return "blocked";
    case NodeState::sans_cts: return "sans-cts";
  }
  return "?";
}

/// Result of one contention period.
struct SlotOutcome {
  std::vector<NodeState> final_states;
  std::size_t rts_count = 0;  // n*: transmission attempts
  std::size_t cts_count = 0;  // c: successful handshakes
  std::vector<std::pair<NodeId, NodeId>> pairs;  // (transmitter, receiver)
  double theta = 0.0;                            // c / n

  std::size_t count(NodeState s) const {
    std::size_t k = 0;
    for (auto x : final_states) k += (x == s);
    return k;
  }

  friend bool operator==(const SlotOutcome&, const SlotOutcome&) = default;
};

}  // namespace srl
