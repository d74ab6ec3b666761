// Command-line front end: graph sampling, Monte Carlo, fluid integration,
// comparisons and figure sweeps. Exit codes: 0 ok, 2 usage, 3 numerical.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "srl/srl.hpp"

namespace {

constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;

// Flags shared by the spec-driven commands; set flags override the spec file.
struct SpecFlags {
  std::string spec_file;
  std::optional<std::string> model, dist, variant, graph_file, system;
  std::optional<double> nu, a, sigma, lambda;
  std::optional<std::size_t> n, reps;
  std::optional<srl::Seed> seed;
  std::optional<unsigned> threads;
  bool lazy = false;
  bool no_fluid = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--spec", spec_file, "JSON spec file")->check(CLI::ExistingFile);
    cmd.add_option("--model", model, "config-dist, er, lattice-line, lattice-grid, spatial or file");
    cmd.add_option("--dist", dist, "degree law: delta:K, uniform:LO:HI, poisson:NU, weights:W0,W1,..");
    cmd.add_option("--variant", variant, "ideal, fail-block or fail-timeout");
    cmd.add_option("--graph-file", graph_file, "edge list for the file model");
    cmd.add_option("--system", system, "fluid system override");
    cmd.add_option("--nu", nu, "mean degree (er, spatial)");
    cmd.add_option("--a", a, "path-loss exponent (spatial)");
    cmd.add_option("--sigma", sigma, "log-normal fading deviation (spatial)");
    cmd.add_option("--lambda", lambda, "attempt rate of the fluid system");
    cmd.add_option("--n", n, "node count");
    cmd.add_option("--reps", reps, "replications");
    cmd.add_option("--seed", seed, "base seed (default: SRL_SEED or 1)");
    cmd.add_option("--threads", threads, "worker threads (0 = all cores)");
    cmd.add_flag("--lazy", lazy, "build configuration graphs jointly with the dynamics");
    cmd.add_flag("--no-fluid", no_fluid, "skip the fluid part");
  }

  srl::xp::ExperimentSpec resolve() const {
    using namespace srl::xp;
    ExperimentSpec s = spec_file.empty() ? ExperimentSpec{} : load_spec(spec_file);
    nlohmann::json j = nlohmann::json::object();
    if (model) j["model"] = *model;
    if (dist) j["dist"] = *dist;
    if (variant) j["variant"] = *variant;
    if (graph_file) j["graph_file"] = *graph_file;
    if (system) j["system"] = *system;
    if (nu) j["nu"] = *nu;
    if (a) j["a"] = *a;
    if (sigma) j["sigma"] = *sigma;
    if (lambda) j["lambda"] = *lambda;
    if (n) j["n"] = *n;
    if (reps) j["replications"] = *reps;
    if (seed) j["seed"] = *seed;
    if (threads) j["threads"] = *threads;
    if (lazy) j["lazy"] = true;
    if (no_fluid) j["fluid"] = false;
    apply_json(s, j);
    s.validate();
    return s;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial reuse of RTS/CTS contention: simulation and fluid limits"};
  app.require_subcommand(1);
  std::string out = "out";
  app.add_option("--out", out, "output directory")->capture_default_str();

  SpecFlags flags;
  auto* graph = app.add_subcommand("graph", "sample one graph; write edge list and degree law");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of theta");
  auto* fluid = app.add_subcommand("fluid", "integrate the fluid system");
  auto* compare = app.add_subcommand("compare", "simulation against the fluid prediction");
  for (auto* cmd : {graph, simulate, fluid, compare}) {
    flags.attach(*cmd);
    cmd->add_option("--out", out, "output directory");
  }
  bool per_run = false;
  simulate->add_flag("--per-run", per_run, "also write every replication's theta");
  srl::IntegrateOptions iopts;
  fluid->add_option("--rel-tol", iopts.rel_tol, "relative tolerance")->capture_default_str();
  fluid->add_option("--abs-tol", iopts.abs_tol, "absolute tolerance")->capture_default_str();
  fluid->add_option("--stop-mass", iopts.stop_mass, "stop threshold")->capture_default_str();

  auto* figure = app.add_subcommand("figure", "run a figure sweep");
  std::string figure_name;
  std::optional<std::size_t> fig_n, fig_reps;
  std::optional<srl::Seed> fig_seed;
  unsigned fig_threads = 0;
  figure->add_option("name", figure_name, "figure name")->required();
  figure->add_option("--n", fig_n, "node count override");
  figure->add_option("--reps", fig_reps, "replications per point");
  figure->add_option("--seed", fig_seed, "base seed");
  figure->add_option("--threads", fig_threads, "worker threads");
  figure->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_usage;
  }

  try {
    using namespace srl::xp;
    CommandResult res;
    nlohmann::json resolved;
    std::string command;
    if (figure->parsed()) {
      command = "figure";
      if (!is_figure(figure_name)) {
        std::cerr << "unknown figure '" << figure_name << "'; expected one of:";
        for (auto f : figure_names) std::cerr << ' ' << f;
        std::cerr << '\n';
        return exit_usage;
      }
      FigureOptions fo;
      if (fig_seed) fo.seed = *fig_seed;
      fo.n = fig_n;
      fo.replications = fig_reps;
      fo.threads = fig_threads;
      res = cmd_figure(figure_name, fo, out);
      resolved = {{"figure", figure_name}, {"seed", fo.seed}};
      if (fo.n) resolved["n"] = *fo.n;
      if (fo.replications) resolved["replications"] = *fo.replications;
    } else {
      const auto spec = flags.resolve();
      resolved = to_json(spec);
      if (graph->parsed()) {
        command = "graph";
        res = cmd_graph(spec, out);
      } else if (simulate->parsed()) {
        command = "simulate";
        res = cmd_simulate(spec, out, per_run);
      } else if (fluid->parsed()) {
        command = "fluid";
        res = cmd_fluid(spec, out, iopts);
      } else {
        command = "compare";
        res = cmd_compare(spec, out);
      }
    }
    write_manifest(out, command, resolved, res);
    std::cout << res.summary.dump() << '\n';
    return 0;
  } catch (const srl::error& e) {
    std::cerr << e.what() << '\n';
    if (e.numerical()) return exit_numerical;
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
}
