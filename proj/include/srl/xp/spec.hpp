#pragma once

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "srl/error.hpp"
#include "srl/fluid/assumption.hpp"
#include "srl/fluid/integrate.hpp"
#include "srl/graph/generators.hpp"
#include "srl/graph/io.hpp"
#include "srl/mac/estimate.hpp"
#include "srl/mac/types.hpp"
#include "srl/random.hpp"

namespace srl::xp {

enum class Model { config_dist, er, lattice_line, lattice_grid, spatial, file };

inline constexpr Model all_models[] = {Model::config_dist, Model::er,      Model::lattice_line,
                                       Model::lattice_grid, Model::spatial, Model::file};

inline std::string_view to_string(Model m) {
  switch (m) {
    case Model::config_dist: return "config-dist";
    case Model::er: return "er";
    case Model::lattice_line: return "lattice-line";
    case Model::lattice_grid: return "lattice-grid";
    case Model::spatial: return "spatial";
    case Model::file: return "file";
  }
  return "?";
}

inline Model parse_model(std::string_view s) {
  for (auto m : all_models) {
    if (to_string(m) == s) return m;
  }
  throw error(errc::invalid_parameter, "unknown model: " + std::string(s));
}

namespace detail {

inline double parse_number(std::string_view s) {
  double x = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc{} || ptr != end) throw error(errc::invalid_parameter, "not a number: " + std::string(s));
  return x;
}

inline std::size_t parse_count(std::string_view s) {
  std::size_t x = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc{} || ptr != end) throw error(errc::invalid_parameter, "not a count: " + std::string(s));
  return x;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

}  // namespace detail

/// Degree law from a compact description:
///   delta:K | uniform:LO:HI | poisson:NU[:TAIL] | weights:W0,W1,... | file:PATH
/// A bare comma list is read as weights.
inline DegreeDistribution parse_distribution(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (colon == std::string_view::npos && text.find(',') != std::string_view::npos) {
    return parse_distribution("weights:" + std::string(text));
  }
  const auto args = detail::split(rest, ':');
  if (kind == "delta" && args.size() == 1) return DegreeDistribution::delta(detail::parse_count(args[0]));
  if (kind == "uniform" && args.size() == 2) {
    return DegreeDistribution::uniform(detail::parse_count(args[0]), detail::parse_count(args[1]));
  }
  if (kind == "poisson" && (args.size() == 1 || args.size() == 2)) {
    const double tail = args.size() == 2 ? detail::parse_number(args[1]) : 1e-10;
    return truncate_poisson(detail::parse_number(args[0]), tail);
  }
  if (kind == "weights" && !rest.empty()) {
    std::vector<double> w;
    for (auto part : detail::split(rest, ',')) w.push_back(detail::parse_number(part));
    return DegreeDistribution::from_weights(std::move(w));
  }
  if (kind == "file" && !rest.empty()) {
    std::ifstream in{std::string(rest)};
    if (!in) throw error(errc::io, "cannot open " + std::string(rest));
    return read_distribution_csv(in);
  }
  throw error(errc::invalid_parameter, "unrecognized degree distribution: " + std::string(text));
}

/// Seed used when neither the spec nor the command line sets one.
inline Seed default_seed() {
  if (const char* env = std::getenv("SRL_SEED"); env && *env) {
    return static_cast<Seed>(detail::parse_count(env));
  }
  return 1;
}

/// Fully resolved description of one experiment.
struct ExperimentSpec {
  Model model = Model::config_dist;
  std::string dist = "delta:2";  // config-dist
  double nu = 5.0;               // er, spatial
  double pathloss = 2.0;         // spatial
  double sigma = 0.0;            // spatial
  std::string graph_file;        // file
  Variant variant = Variant::ideal_retry;
  std::size_t n = 1000;
  std::size_t replications = 100;
  bool fluid = true;
  bool lazy = false;
  Seed seed = default_seed();
  double lambda = 1.0;
  unsigned threads = 0;
  std::optional<FluidSystem> system;  // overrides the variant's system in fluid runs

  void validate() const {
    if (replications == 0) throw error(errc::invalid_parameter, "replications must be at least 1");
    if (!(lambda > 0.0)) throw error(errc::invalid_parameter, "lambda must be positive");
    switch (model) {
      case Model::config_dist:
        if (n == 0) throw error(errc::invalid_parameter, "n must be positive");
        (void)parse_distribution(dist);
        if (lazy && variant != Variant::ideal_retry) {
          throw error(errc::invalid_parameter, "lazy construction supports the ideal variant only");
        }
        break;
      case Model::er:
        if (n < 2) throw error(errc::invalid_parameter, "er needs n >= 2");
        if (!(nu >= 0.0) || nu > static_cast<double>(n - 1)) throw error(errc::invalid_parameter, "er needs 0 <= nu <= n-1");
        break;
      case Model::lattice_line:
      case Model::lattice_grid:
        (void)make_lattice(model == Model::lattice_line ? LatticeKind::line : LatticeKind::grid, n);
        break;
      case Model::spatial:
        spatial_config().validate();
        break;
      case Model::file:
        if (graph_file.empty()) throw error(errc::invalid_parameter, "file model needs a graph file");
        break;
    }
  }

  SpatialConfig spatial_config() const {
    SpatialConfig c;
    c.target_n = static_cast<double>(n);
    c.pathloss_exponent = pathloss;
    c.sigma = sigma;
    c.mean_degree_nu = nu;
    return c;
  }
};

inline nlohmann::json to_json(const ExperimentSpec& s) {
  nlohmann::json j = {{"model", std::string(to_string(s.model))},
                      {"variant", std::string(to_string(s.variant))},
                      {"n", s.n},
                      {"replications", s.replications},
                      {"fluid", s.fluid},
                      {"seed", s.seed},
                      {"lambda", s.lambda}};
  switch (s.model) {
    case Model::config_dist:
      j["dist"] = s.dist;
      j["lazy"] = s.lazy;
      break;
    case Model::er: j["nu"] = s.nu; break;
    case Model::spatial:
      j["nu"] = s.nu;
      j["a"] = s.pathloss;
      j["sigma"] = s.sigma;
      break;
    case Model::file: j["graph_file"] = s.graph_file; break;
    default: break;
  }
  if (s.system) j["system"] = std::string(to_string(*s.system));
  return j;
}

/// Applies the keys present in `j` to `s`. Keys use the flag spellings.
inline void apply_json(ExperimentSpec& s, const nlohmann::json& j) {
  if (!j.is_object()) throw error(errc::invalid_parameter, "spec must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "model") s.model = parse_model(value.get<std::string>());
      else if (key == "dist") s.dist = value.get<std::string>();
      else if (key == "nu") s.nu = value.get<double>();
      else if (key == "a") s.pathloss = value.get<double>();
      else if (key == "sigma") s.sigma = value.get<double>();
      else if (key == "graph_file" || key == "graph-file") s.graph_file = value.get<std::string>();
      else if (key == "variant") {
        const auto v = parse_variant(value.get<std::string>());
        if (!v) throw error(errc::invalid_parameter, "unknown variant");
        s.variant = *v;
      } else if (key == "n") s.n = value.get<std::size_t>();
      else if (key == "replications" || key == "reps") s.replications = value.get<std::size_t>();
      else if (key == "fluid") s.fluid = value.get<bool>();
      else if (key == "lazy") s.lazy = value.get<bool>();
      else if (key == "seed") s.seed = value.get<Seed>();
      else if (key == "lambda") s.lambda = value.get<double>();
      else if (key == "threads") s.threads = value.get<unsigned>();
      else if (key == "system") s.system = parse_fluid_system(value.get<std::string>());
      else throw error(errc::invalid_parameter, "unknown spec key: " + key);
    }
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::invalid_parameter, std::string("bad spec value: ") + e.what());
  }
}

inline ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io, "cannot open spec " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::invalid_parameter, std::string("spec is not valid JSON: ") + e.what());
  }
  ExperimentSpec s;
  apply_json(s, j);
  return s;
}

/// Graph source for Monte Carlo replications of the spec.
inline GraphSource graph_source(const ExperimentSpec& s) {
  switch (s.model) {
    case Model::config_dist: return ConfigurationSource{parse_distribution(s.dist), s.n, s.lazy};
    case Model::er: return ErSource{s.n, s.nu};
    case Model::lattice_line: return make_lattice(LatticeKind::line, s.n);
    case Model::lattice_grid: return make_lattice(LatticeKind::grid, s.n);
    case Model::spatial: return SpatialSource{s.spatial_config()};
    case Model::file: {
      std::ifstream in(s.graph_file);
      if (!in) throw error(errc::io, "cannot open graph file " + s.graph_file);
      return read_edge_list(in);
    }
  }
  throw error(errc::invalid_parameter, "unknown model");
}

/// Fluid system matching a protocol variant.
inline FluidSystem fluid_system_for(Variant v) {
  switch (v) {
    case Variant::ideal_retry: return FluidSystem::sender_receiver;
    case Variant::fail_block: return FluidSystem::fail_block;
    case Variant::fail_timeout: return FluidSystem::fail_timeout;
  }
  return FluidSystem::sender_receiver;
}

/// Degree law fed to the fluid system: the model's law for random and
/// lattice models, the pooled empirical law of the replications' graphs for
/// spatial and file models.
inline DegreeDistribution fluid_degree_law(const ExperimentSpec& s) {
  switch (s.model) {
    case Model::config_dist: return parse_distribution(s.dist);
    case Model::er: return truncate_poisson(s.nu, 1e-12);
    case Model::lattice_line: return DegreeDistribution::delta(2);
    case Model::lattice_grid: return DegreeDistribution::delta(4);
    case Model::spatial: {
      const GraphSource src = SpatialSource{s.spatial_config()};
      std::vector<InterferenceGraph> graphs;
      for (std::size_t r = 0; r < s.replications; ++r) graphs.push_back(realize(src, derive_seed(s.seed, r)));
      return empirical_degree_distribution(std::span<const InterferenceGraph>(graphs));
    }
    case Model::file: {
      const auto g = std::get<InterferenceGraph>(graph_source(s));
      return empirical_degree_distribution(g);
    }
  }
  throw error(errc::invalid_parameter, "unknown model");
}

/// Fluid problem for the spec. ER with the ideal variant uses the scalar
/// Poisson system unless another system is requested.
inline FluidProblem fluid_problem(const ExperimentSpec& s) {
  FluidSystem sys = s.system.value_or(fluid_system_for(s.variant));
  if (!s.system && s.model == Model::er && s.variant == Variant::ideal_retry) sys = FluidSystem::poisson;
  if (sys == FluidSystem::poisson) {
    const double nu = s.model == Model::er ? s.nu : mean_degree(fluid_degree_law(s));
    return FluidProblem::poisson(nu, 1.0, s.lambda);
  }
  return FluidProblem::from_distribution(sys, fluid_degree_law(s), s.lambda);
}

}  // namespace srl::xp
