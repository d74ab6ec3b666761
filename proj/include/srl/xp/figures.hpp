#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "srl/error.hpp"
#include "srl/xp/report.hpp"
#include "srl/xp/spec.hpp"

namespace srl::xp {

inline constexpr std::string_view figure_names[] = {"uniform-k",     "poisson-N",         "poisson-mean",
                                                    "lattice",       "spatial-ideal",     "spatial-failblock",
                                                    "spatial-timeout"};

inline bool is_figure(std::string_view name) {
  for (auto f : figure_names) {
    if (f == name) return true;
  }
  return false;
}

/// One point of a figure: a boxplot of simulated theta and the fluid value.
struct FigureRow {
  std::string series;
  double x = 0.0;
  std::size_t n = 0;
  ComparisonReport report;
};

struct FigureData {
  std::string name;
  std::string x_label;
  std::vector<FigureRow> rows;
  nlohmann::json plot;  // declarative description of the chart
};

/// Overrides for figure defaults; unset fields keep the figure's own values.
struct FigureOptions {
  Seed seed = default_seed();
  std::optional<std::size_t> n;
  std::optional<std::size_t> replications;
  unsigned threads = 0;
};

namespace detail {

inline FigureRow figure_point(ExperimentSpec spec, std::string series, double x, Seed row_seed) {
  spec.seed = row_seed;
  FigureRow row{std::move(series), x, spec.n, compare(spec)};
  return row;
}

inline nlohmann::json plot_spec(const FigureData& fig, const std::string& csv_name, bool log_x) {
  std::vector<std::string> series;
  for (const auto& r : fig.rows) {
    if (std::find(series.begin(), series.end(), r.series) == series.end()) series.push_back(r.series);
  }
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& s : series) {
    layers.push_back({{"name", s + " simulation"},
                      {"type", "boxplot"},
                      {"filter", {{"series", s}}},
                      {"x", "x"},
                      {"whisker_low", "min"},
                      {"q1", "q25"},
                      {"median", "median"},
                      {"q3", "q75"},
                      {"whisker_high", "max"},
                      {"mean", "mean"}});
    layers.push_back({{"name", s + " fluid"},
                      {"type", "line"},
                      {"filter", {{"series", s}}},
                      {"x", "x"},
                      {"y", "fluid_theta"},
                      {"marker", "cross"}});
  }
  return {{"title", fig.name},
          {"data", csv_name},
          {"x", {{"field", "x"}, {"label", fig.x_label}, {"scale", log_x ? "log" : "linear"}}},
          {"y", {{"label", "spatial reuse"}, {"domain", {0.0, 0.5}}}},
          {"layers", std::move(layers)}};
}

}  // namespace detail

/// Runs the sweep behind figure `name`.
inline FigureData run_figure(std::string_view name, const FigureOptions& opt = {}) {
  if (!is_figure(name)) throw error(errc::invalid_parameter, "unknown figure: " + std::string(name));
  FigureData fig;
  fig.name = std::string(name);
  std::size_t point = 0;
  auto next_seed = [&] { return derive_seed(opt.seed, point++); };
  auto base = [&](Model model, std::size_t n, std::size_t reps) {
    ExperimentSpec s;
    s.model = model;
    s.n = opt.n.value_or(n);
    s.replications = opt.replications.value_or(reps);
    s.threads = opt.threads;
    return s;
  };
  bool log_x = false;

  if (name == "uniform-k") {
    fig.x_label = "k (degrees uniform on 5-k..5+k)";
    for (int k = 0; k <= 5; ++k) {
      auto s = base(Model::config_dist, 1000, 100);
      s.dist = "uniform:" + std::to_string(5 - k) + ":" + std::to_string(5 + k);
      fig.rows.push_back(detail::figure_point(s, "uniform", k, next_seed()));
    }
  } else if (name == "poisson-N" || name == "poisson-mean") {
    fig.x_label = "mean degree";
    std::vector<std::size_t> sizes{1000};
    if (name == "poisson-N") sizes.push_back(20);
    for (std::size_t n : sizes) {
      for (int nu = 1; nu <= 10; ++nu) {
        auto s = base(Model::er, n, 100);
        if (name == "poisson-N") s.n = n;
        s.nu = nu;
        fig.rows.push_back(detail::figure_point(s, "N=" + std::to_string(s.n), nu, next_seed()));
      }
    }
  } else if (name == "lattice") {
    fig.x_label = "nodes";
    log_x = true;
    for (std::size_t n : {100u, 1000u, 10000u}) {
      auto s = base(Model::lattice_line, n, 100);
      s.n = n;
      fig.rows.push_back(detail::figure_point(s, "line", static_cast<double>(n), next_seed()));
    }
    for (std::size_t n : {100u, 900u, 10000u}) {
      auto s = base(Model::lattice_grid, n, 100);
      s.n = n;
      fig.rows.push_back(detail::figure_point(s, "grid", static_cast<double>(n), next_seed()));
    }
  } else {
    const Variant v = name == "spatial-ideal"       ? Variant::ideal_retry
                      : name == "spatial-failblock" ? Variant::fail_block
                                                    : Variant::fail_timeout;
    fig.x_label = "sigma (log-normal fading)";
    for (double sigma : {0.0, 0.5, 1.0, 1.5, 2.0}) {
      auto s = base(Model::spatial, 1000, 10);
      s.variant = v;
      s.nu = 2.0;
      s.pathloss = 2.0;
      s.sigma = sigma;
      fig.rows.push_back(detail::figure_point(s, std::string(to_string(v)), sigma, next_seed()));
    }
  }
  fig.plot = detail::plot_spec(fig, fig.name + ".csv", log_x);
  return fig;
}

inline void write_figure_csv(std::ostream& os, const FigureData& fig) {
  const auto old = os.precision(12);
  os << "series,x,n,replications,mean,std_error,ci_low,ci_high,min,q25,median,q75,max,fluid_theta,abs_gap,"
        "within_ci\n";
  for (const auto& r : fig.rows) {
    const auto& st = r.report.sim;
    os << r.series << ',' << r.x << ',' << r.n << ',' << st.replications << ',' << st.mean << ','
       << st.std_error() << ',' << st.ci_low() << ',' << st.ci_high() << ',' << st.min << ',' << st.q25 << ','
       << st.median << ',' << st.q75 << ',' << st.max << ',' << r.report.fluid_theta << ',' << r.report.abs_gap
       << ',' << (r.report.within_ci ? 1 : 0) << '\n';
  }
  os.precision(old);
}

}  // namespace srl::xp
