// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Seeds are fixed so that every run prints the same numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "srl/srl.hpp"
#include "support/properties.hpp"

using namespace srl;

namespace {

constexpr Seed seed = 1;

struct Verdict {
  bool passed = true;
  std::string detail;
};

class Detail {
 public:
  Detail() { os_.precision(6); }
  template <class T>
  Detail& operator<<(const T& x) {
    os_ << x;
    return *this;
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

InterferenceGraph from_edges(std::size_t n, std::vector<Edge> e) { return InterferenceGraph::from_edges(n, e); }

InterferenceGraph path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return from_edges(n, e);
}

InterferenceGraph cycle(std::size_t n) {
  auto e = path(n).edges();
  e.emplace_back(0, n - 1);
  return from_edges(n, e);
}

InterferenceGraph star(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) e.emplace_back(0, v);
  return from_edges(n, e);
}

InterferenceGraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return from_edges(n, e);
}

InterferenceGraph matching(std::size_t pairs) {
  std::vector<Edge> e;
  for (NodeId p = 0; p < pairs; ++p) e.emplace_back(2 * p, 2 * p + 1);
  return from_edges(2 * pairs, e);
}

double fluid_theta(FluidSystem sys, const DegreeDistribution& d) {
  IntegrateOptions o;
  o.record_trajectory = false;
  return integrate(FluidProblem::from_distribution(sys, d), o).theta;
}

const xp::FigureData& figure(const std::string& name) {
  static std::map<std::string, xp::FigureData> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    xp::FigureOptions o;
    o.seed = seed;
    it = cache.emplace(name, xp::run_figure(name, o)).first;
  }
  return it->second;
}

const xp::FigureRow& row(const xp::FigureData& fig, const std::string& series, double x) {
  for (const auto& r : fig.rows) {
    if (r.series == series && r.x == x) return r;
  }
  throw error(errc::invalid_parameter, "missing figure row " + series);
}

Verdict exact_laws() {
  Verdict v;
  struct Case {
    std::string name;
    InterferenceGraph g;
    double theta;
  };
  std::vector<Case> cases;
  for (std::size_t k : {1u, 3u, 10u, 100u}) cases.push_back({"matching", matching(k), 0.5});
  for (std::size_t n : {1u, 5u, 50u}) cases.push_back({"edgeless", from_edges(n, {}), 0.0});
  for (std::size_t n : {2u, 3u, 6u, 20u}) cases.push_back({"K_n", complete(n), 1.0 / double(n)});
  std::size_t checked = 0;
  for (const auto& c : cases) {
    for (auto variant : all_variants) {
      for (double t : replicate_thetas(c.g, variant, 200, seed, 1)) {
        ++checked;
        if (t != c.theta) {
          v.passed = false;
          v.detail = (Detail() << c.name << " n=" << c.g.size() << ' ' << to_string(variant) << " gave " << t).str();
          return v;
        }
      }
    }
  }
  v.detail = (Detail() << checked << " replications exact").str();
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  const double p5_ideal = brute_force_theta(path(5), Variant::ideal_retry);
  const double p5_block = brute_force_theta(path(5), Variant::fail_block);
  if (std::abs(p5_ideal - 0.32) > 1e-12 || std::abs(p5_block - 0.29) > 1e-12) {
    v.passed = false;
    v.detail = (Detail() << "path-5 oracle " << p5_ideal << ", " << p5_block).str();
    return v;
  }
  std::vector<std::pair<std::string, InterferenceGraph>> corpus;
  for (std::size_t n = 2; n <= 7; ++n) corpus.emplace_back("path" + std::to_string(n), path(n));
  for (std::size_t n = 3; n <= 7; ++n) corpus.emplace_back("cycle" + std::to_string(n), cycle(n));
  for (std::size_t n = 3; n <= 7; ++n) corpus.emplace_back("star" + std::to_string(n), star(n));
  for (std::size_t n = 2; n <= 7; ++n) corpus.emplace_back("K" + std::to_string(n), complete(n));
  double worst = 0.0;
  std::size_t i = 0;
  for (const auto& [name, g] : corpus) {
    for (auto variant : all_variants) {
      const double exact = brute_force_theta(g, variant);
      const auto st = estimate_theta_mc(g, variant, 100000, derive_seed(seed, i++), 1);
      const double z = st.std_error() > 1e-9 ? std::abs(st.mean - exact) / st.std_error() : 0.0;
      worst = std::max(worst, z);
      if (std::abs(st.mean - exact) > 4.0 * st.std_error() + 1e-12) {
        v.passed = false;
        v.detail = (Detail() << name << ' ' << to_string(variant) << " mc " << st.mean << " exact " << exact).str();
        return v;
      }
    }
  }
  v.detail = (Detail() << corpus.size() << " graphs x 3 variants, worst |z| " << worst
                       << "; path-5 " << p5_ideal << " / " << p5_block)
                 .str();
  return v;
}

Verdict closed_form() {
  Verdict v;
  double worst = 0.0;
  double theta = 0.0;
  for (double lambda : {1.0, 2.5}) {
    const auto sol = integrate(FluidProblem::from_distribution(FluidSystem::sender_receiver, DegreeDistribution::delta(1), lambda));
    for (std::size_t k = 0; k < sol.times.size(); ++k) {
      worst = std::max(worst, std::abs(sol.unexplored_mass[k] - std::exp(-2.0 * lambda * sol.times[k])));
    }
    worst = std::max(worst, std::abs(sol.theta - 0.5));
    theta = sol.theta;
  }
  v.passed = worst < 1e-6;
  v.detail = (Detail() << "theta " << theta << ", max error " << worst).str();
  return v;
}

Verdict collapse() {
  Verdict v;
  Detail d;
  IntegrateOptions o;
  o.record_trajectory = false;
  for (double nu : {1.0, 2.0, 5.0, 10.0}) {
    const double full = fluid_theta(FluidSystem::sender_receiver, truncate_poisson(nu));
    const double scalar = integrate(FluidProblem::poisson(nu, 1.0, 1.0), o).theta;
    const double gap = std::abs(full - scalar);
    v.passed = v.passed && gap < 1e-3;
    d << "nu=" << nu << " gap " << gap << "; ";
  }
  v.detail = d.str();
  return v;
}

Verdict lattice_numbers() {
  Verdict v;
  const double fluid = fluid_theta(FluidSystem::sender_receiver, DegreeDistribution::delta(4));
  const auto& grid = row(figure("lattice"), "grid", 10000.0);
  v.passed = fluid >= 0.18 && fluid <= 0.19 && grid.report.sim.mean >= 0.16 && grid.report.sim.mean <= 0.18;
  v.detail = (Detail() << "fluid " << fluid << ", grid 10^4 mean " << grid.report.sim.mean).str();
  return v;
}

Verdict poisson_fluid_value() {
  Verdict v;
  IntegrateOptions o;
  o.record_trajectory = false;
  const double theta = integrate(FluidProblem::poisson(5.0, 1.0, 1.0), o).theta;
  v.passed = theta >= 0.08 && theta <= 0.12;
  v.detail = (Detail() << "fluid theta " << theta << ", target [0.08, 0.12]").str();
  return v;
}

Verdict er_within_ci(const std::string& series, std::vector<int> nus) {
  Verdict v;
  Detail d;
  const auto& fig = figure("poisson-N");
  for (int nu : nus) {
    const auto& r = row(fig, series, nu);
    if (!r.report.within_ci) {
      v.passed = false;
      d << "nu=" << nu << " outside (mean " << r.report.sim.mean << ", fluid " << r.report.fluid_theta << "); ";
    }
  }
  if (v.passed) d << "all of " << nus.size() << " points within the 95% CI";
  v.detail = d.str();
  return v;
}

Verdict uniform_degrees() {
  Verdict v;
  std::vector<double> th;
  for (int k = 0; k <= 5; ++k) th.push_back(fluid_theta(FluidSystem::sender_receiver, DegreeDistribution::uniform(5 - k, 5 + k)));
  v.passed = th[3] > 0.15 && th[4] > 0.15 && th[5] < th[0];
  v.detail = (Detail() << "k=0 " << th[0] << ", k=3 " << th[3] << ", k=4 " << th[4] << ", k=5 " << th[5]).str();
  return v;
}

Verdict line_asymptotics() {
  Verdict v;
  const auto& fig = figure("lattice");
  std::vector<double> gaps;
  for (double n : {100.0, 1000.0, 10000.0}) gaps.push_back(row(fig, "line", n).report.abs_gap);
  v.passed = gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] < 0.01;
  v.detail = (Detail() << "gaps " << gaps[0] << ", " << gaps[1] << ", " << gaps[2]).str();
  return v;
}

Verdict spatial(double sigma) {
  Verdict v;
  Detail d;
  for (const char* name : {"spatial-ideal", "spatial-failblock", "spatial-timeout"}) {
    const auto& fig = figure(name);
    const auto& r = fig.rows[sigma == 0.0 ? 0 : 2];
    const bool ok = sigma == 0.0 ? r.report.fluid_theta < r.report.sim.mean - 2.0 * r.report.sim.std_error()
                                 : r.report.within_ci;
    v.passed = v.passed && ok;
    d << name << " sim " << r.report.sim.mean << " +- " << r.report.sim.std_error() << " fluid "
      << r.report.fluid_theta << (ok ? "" : " (miss)") << "; ";
  }
  v.detail = d.str();
  return v;
}

Verdict invariant_suites() {
  Verdict v;
  const std::pair<const char*, std::function<check::Result()>> suites[] = {
      {"state-partition", [] { return check::state_partition(); }},
      {"pair-separation", [] { return check::pair_separation(); }},
      {"counting", [] { return check::counting_identities(); }},
      {"mass", [] { return check::mass_nonincreasing(); }},
      {"trajectories", [] { return check::trajectory_invariants(); }},
      {"half-edge", [] { return check::timeout_conservation(); }},
      {"lambda", [] { return check::lambda_invariance(); }},
  };
  std::size_t total = 0;
  for (const auto& [name, run] : suites) {
    const auto r = run();
    total += r.cases;
    if (!r.ok() || r.cases < check::default_cases) {
      v.passed = false;
      v.detail = std::string(name) + ": " + (r.ok() ? "too few cases" : r.failure);
      return v;
    }
  }
  v.detail = (Detail() << "7 suites, " << total << " cases").str();
  return v;
}

Verdict reductions() {
  const auto g = check::reduction_gaps();
  Verdict v;
  v.passed = g.fail_block_vs_sender_receiver <= 1e-12 && g.timeout_vs_fail_block <= 1e-12;
  v.detail = (Detail() << "max gaps " << g.fail_block_vs_sender_receiver << ", " << g.timeout_vs_fail_block).str();
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"1  exact small-graph laws", exact_laws},
      {"2  oracle equivalence", oracle_equivalence},
      {"3  closed-form fluid", closed_form},
      {"4  state-space collapse", collapse},
      {"5  lattice numbers", lattice_numbers},
      {"6a poisson fluid value", poisson_fluid_value},
      {"6b er N=1000 within CI", [] { return er_within_ci("N=1000", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}); }},
      {"6c er N=20 within CI", [] { return er_within_ci("N=20", {5}); }},
      {"7  uniform degrees", uniform_degrees},
      {"8  line asymptotics", line_asymptotics},
      {"9a spatial underestimation at sigma=0", [] { return spatial(0.0); }},
      {"9b spatial accuracy at sigma=1", [] { return spatial(1.0); }},
      {"10 invariant suites", invariant_suites},
      {"11 reduction consistency", reductions},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %-40s %8.2fs  %s\n", v.passed ? "PASS" : "FAIL", name, secs, v.detail.c_str());
    std::fflush(stdout);
    failures += !v.passed;
  }
  std::printf("%d of %zu criteria failed\n", failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
