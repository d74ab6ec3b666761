#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <thread>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "srl/error.hpp"
#include "srl/graph/generators.hpp"
#include "srl/mac/lazy.hpp"
#include "srl/mac/slot.hpp"
#include "srl/mac/types.hpp"
#include "srl/random.hpp"

namespace srl {

/// Summary of theta over independent replications.
struct ThetaStats {
  std::size_t replications = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased; zero for a single replication
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;

  double std_error() const {
    return replications == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(replications));
  }
  double ci_low(double z = 1.96) const { return mean - z * std_error(); }
  double ci_high(double z = 1.96) const { return mean + z * std_error(); }
  bool contains(double x, double z = 1.96) const { return x >= ci_low(z) && x <= ci_high(z); }
};

namespace detail {

// Linear interpolation between order statistics.
inline double quantile_sorted(std::span<const double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace detail

inline ThetaStats summarize(std::span<const double> samples) {
  if (samples.empty()) throw error(errc::invalid_parameter, "no samples to summarize");
  ThetaStats st;
  st.replications = samples.size();
  double sum = 0.0;
  for (double x : samples) sum += x;
  st.mean = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - st.mean) * (x - st.mean);
    st.variance = ss / static_cast<double>(samples.size() - 1);
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  st.min = sorted.front();
  st.max = sorted.back();
  st.q25 = detail::quantile_sorted(sorted, 0.25);
  st.median = detail::quantile_sorted(sorted, 0.5);
  st.q75 = detail::quantile_sorted(sorted, 0.75);
  return st;
}

// Graph sources for replicated experiments. Random sources are redrawn for
// every replication; a fixed graph is reused.
struct ConfigurationSource {
  DegreeDistribution dist;
  std::size_t n = 0;
  bool lazy = false;  // joint construction (ideal-retry only)
};
struct ErSource {
  std::size_t n = 0;
  double nu = 0.0;
};
struct SpatialSource {
  SpatialConfig config;
};
using GraphSource = std::variant<InterferenceGraph, ConfigurationSource, ErSource, SpatialSource>;

/// Graph used by replication `rep_seed` (for random sources).
inline InterferenceGraph realize(const GraphSource& source, Seed rep_seed) {
  const Seed gseed = derive_seed(rep_seed, 0);
  return std::visit(
      [&](const auto& src) -> InterferenceGraph {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, InterferenceGraph>) {
          return src;
        } else if constexpr (std::is_same_v<T, ConfigurationSource>) {
          return sample_configuration_graph(src.dist, src.n, gseed);
        } else if constexpr (std::is_same_v<T, ErSource>) {
          return sample_er_graph(src.n, src.nu, gseed);
        } else {
          return sample_spatial_graph(src.config, gseed);
        }
      },
      source);
}

/// Theta of replication `index`; depends only on (source, variant, seed, index).
inline double replicate_theta(const GraphSource& source, Variant variant, Seed seed,
                              std::size_t index) {
  const Seed rep_seed = derive_seed(seed, index);
  if (const auto* g = std::get_if<InterferenceGraph>(&source)) {
    return run_slot(*g, variant, rep_seed).theta;
  }
  if (const auto* cfg = std::get_if<ConfigurationSource>(&source); cfg && cfg->lazy) {
    return run_slot_lazy(cfg->dist, cfg->n, variant, rep_seed).theta;
  }
  return run_slot(realize(source, rep_seed), variant, derive_seed(rep_seed, 1)).theta;
}

/// Per-replication thetas, computed on up to `threads` workers (0 = hardware
/// concurrency) and stored by replication index.
inline std::vector<double> replicate_thetas(const GraphSource& source, Variant variant,
                                            std::size_t replications, Seed seed,
                                            unsigned threads = 0) {
  if (replications == 0) throw error(errc::invalid_parameter, "replications must be at least 1");
  std::vector<double> thetas(replications);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, replications));
  if (threads <= 1) {
    for (std::size_t i = 0; i < replications; ++i) thetas[i] = replicate_theta(source, variant, seed, i);
    return thetas;
  }
  std::vector<std::exception_ptr> failures(threads);
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < replications; i += threads) {
            thetas[i] = replicate_theta(source, variant, seed, i);
          }
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return thetas;
}

inline ThetaStats estimate_theta_mc(const GraphSource& source, Variant variant,
                                    std::size_t replications, Seed seed, unsigned threads = 0) {
  const auto thetas = replicate_thetas(source, variant, replications, seed, threads);
  return summarize(thetas);
}

inline void write_stats_csv_header(std::ostream& os) {
  os << "replications,mean,variance,min,q25,median,q75,max\n";
}

inline void write_stats_csv_row(std::ostream& os, const ThetaStats& st) {
  const auto old = os.precision(17);
  os << st.replications << ',' << st.mean << ',' << st.variance << ',' << st.min << ',' << st.q25
     << ',' << st.median << ',' << st.q75 << ',' << st.max << '\n';
  os.precision(old);
}

inline nlohmann::json to_json(const ThetaStats& st) {
  return {{"replications", st.replications}, {"mean", st.mean},     {"variance", st.variance},
          {"min", st.min},                   {"q25", st.q25},       {"median", st.median},
          {"q75", st.q75},                   {"max", st.max},       {"std_error", st.std_error()}};
}

inline nlohmann::json to_json(const SlotOutcome& out) {
  nlohmann::json states = nlohmann::json::array();
  for (auto s : out.final_states) states.push_back(std::string(to_string(s)));
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [t, r] : out.pairs) pairs.push_back({t, r});
  return {{"final_states", std::move(states)},
          {"rts_count", out.rts_count},
          {"cts_count", out.cts_count},
          {"pairs", std::move(pairs)},
          {"theta", out.theta}};
}

}  // namespace srl
