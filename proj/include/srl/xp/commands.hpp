#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "srl/fluid/io.hpp"
#include "srl/graph/io.hpp"
#include "srl/mac/slot.hpp"
#include "srl/xp/figures.hpp"
#include "srl/xp/report.hpp"
#include "srl/xp/spec.hpp"

namespace srl::xp {

/// Files written by a command, relative to its output directory.
struct CommandResult {
  std::vector<std::string> files;
  nlohmann::json summary;
};

namespace detail {

class OutDir {
 public:
  explicit OutDir(std::filesystem::path root) : root_(std::move(root)) {
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    if (ec) throw error(errc::io, "cannot create " + root_.string() + ": " + ec.message());
  }

  std::ofstream open(const std::string& name, CommandResult& result) const {
    std::ofstream os(root_ / name, std::ios::binary);
    if (!os) throw error(errc::io, "cannot write " + (root_ / name).string());
    result.files.push_back(name);
    return os;
  }

  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
};

inline void write_json(std::ostream& os, const nlohmann::json& j) { os << j.dump(2) << '\n'; }

}  // namespace detail

/// Samples one graph from the spec and writes its edge list and degree law.
inline CommandResult cmd_graph(const ExperimentSpec& spec, const std::filesystem::path& out) {
  spec.validate();
  detail::OutDir dir(out);
  CommandResult res;
  const auto g = realize(graph_source(spec), spec.seed);
  {
    auto os = dir.open("graph.edges", res);
    write_edge_list(os, g);
  }
  const auto law = empirical_degree_distribution(g);
  {
    auto os = dir.open("degree.csv", res);
    write_csv(os, law);
  }
  res.summary = {{"nodes", g.size()}, {"edges", g.edge_count()}, {"mean_degree", mean_degree(law)}};
  return res;
}

/// Monte Carlo estimate of theta; optionally the per-replication values.
inline CommandResult cmd_simulate(const ExperimentSpec& spec, const std::filesystem::path& out,
                                  bool per_run = false) {
  spec.validate();
  detail::OutDir dir(out);
  CommandResult res;
  const auto thetas = replicate_thetas(graph_source(spec), spec.variant, spec.replications, spec.seed, spec.threads);
  const auto st = summarize(thetas);
  {
    auto os = dir.open("stats.csv", res);
    write_stats_csv_header(os);
    write_stats_csv_row(os, st);
  }
  if (per_run) {
    auto os = dir.open("runs.json", res);
    detail::write_json(os, {{"theta", thetas}});
  }
  res.summary = srl::to_json(st);
  return res;
}

/// Integrates the spec's fluid system and writes the trajectory.
inline CommandResult cmd_fluid(const ExperimentSpec& spec, const std::filesystem::path& out,
                               IntegrateOptions opts = {}) {
  spec.validate();
  detail::OutDir dir(out);
  CommandResult res;
  const auto problem = fluid_problem(spec);
  const auto sol = integrate(problem, opts);
  {
    auto os = dir.open("fluid.csv", res);
    write_solution_csv(os, sol);
  }
  {
    auto os = dir.open("fluid.json", res);
    detail::write_json(os, solution_sidecar(sol, problem, opts));
  }
  res.summary = {{"system", std::string(to_string(sol.system))}, {"theta", sol.theta}};
  return res;
}

inline CommandResult cmd_compare(const ExperimentSpec& spec, const std::filesystem::path& out) {
  detail::OutDir dir(out);
  CommandResult res;
  const auto report = compare(spec);
  res.summary = to_json(report);
  auto os = dir.open("compare.json", res);
  detail::write_json(os, res.summary);
  return res;
}

inline CommandResult cmd_figure(std::string_view name, const FigureOptions& opt, const std::filesystem::path& out) {
  const auto fig = run_figure(name, opt);
  detail::OutDir dir(out);
  CommandResult res;
  {
    auto os = dir.open(fig.name + ".csv", res);
    write_figure_csv(os, fig);
  }
  {
    auto os = dir.open(fig.name + ".plot.json", res);
    detail::write_json(os, fig.plot);
  }
  res.summary = {{"figure", fig.name}, {"rows", fig.rows.size()}};
  return res;
}

/// Lists every produced file together with the resolved inputs.
inline void write_manifest(const std::filesystem::path& out, const std::string& command,
                           const nlohmann::json& resolved, CommandResult& res) {
  detail::OutDir dir(out);
  std::vector<std::string> files = res.files;
  files.push_back("manifest.json");
  auto os = dir.open("manifest.json", res);
  detail::write_json(os, {{"command", command}, {"spec", resolved}, {"files", files}, {"summary", res.summary}});
}

}  // namespace srl::xp
