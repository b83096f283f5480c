// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

// wkf: batch front end for the wavelet-kernel block forecaster.
//
//   wkf predict  --input series.csv --p 12 [--h 0.1 | --cv-grid lo:hi:n] -o out/
//   wkf cv       --input series.csv --p 12 -o out/
//   wkf interval --input series.csv --p 12 --alpha 0.025 --b 500 --seed 7 -o out/
//   wkf eval     --input series.csv --p 12 [--forecast other.csv] -o out/
//   wkf generate --kind seasonal_ar --segments 100 --p 16 --noise 1 -o series.csv

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "wkf/error.hpp"
#include "wkf/evaluation.hpp"
#include "wkf/run.hpp"
#include "wkf/series_io.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::size_t period = 0;
  std::string filter;
  int j0 = 0;
  std::string kernel;
  std::string weighting;
  std::string bandwidth;
  std::string cv_grid;
  double alpha = 0.025;
  std::size_t draws = 500;
  std::uint64_t seed = 0;
  std::string scales;
  bool drop_remainder = false;
  bool include_coarse = false;
  bool exact_quantiles = false;
  std::size_t min_history = 3;
  std::string input;
  std::string output;
  std::string truth;
  std::string forecast;
};

struct Options {
  CLI::Option* config = nullptr;
  CLI::Option* period = nullptr;
  CLI::Option* filter = nullptr;
  CLI::Option* j0 = nullptr;
  CLI::Option* kernel = nullptr;
  CLI::Option* weighting = nullptr;
  CLI::Option* bandwidth = nullptr;
  CLI::Option* cv_grid = nullptr;
  CLI::Option* alpha = nullptr;
  CLI::Option* draws = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* scales = nullptr;
  CLI::Option* drop_remainder = nullptr;
  CLI::Option* include_coarse = nullptr;
  CLI::Option* exact_quantiles = nullptr;
  CLI::Option* min_history = nullptr;
  CLI::Option* input = nullptr;
  CLI::Option* output = nullptr;
  CLI::Option* truth = nullptr;
  CLI::Option* forecast = nullptr;
};

Options add_run_flags(CLI::App* app, CommonFlags& f) {
  Options o;
  o.config = app->add_option("--config", f.config_path,
                             "JSON config (or a previous summary.json) to start from");
  o.input = app->add_option("-i,--input", f.input, "one-column CSV series");
  o.output = app->add_option("-o,--output", f.output, "output directory");
  o.period = app->add_option("--p", f.period, "segment length P");
  o.filter = app->add_option("--filter", f.filter, "dd2 | dd6 | sym6-interp");
  o.j0 = app->add_option("--j0", f.j0, "coarsest decomposition level");
  o.kernel = app->add_option("--kernel", f.kernel, "gaussian | laplace");
  o.weighting = app->add_option("--weighting", f.weighting, "normalized | shrunk");
  o.bandwidth = app->add_option("--h", f.bandwidth, "fixed bandwidth, or 'cv'");
  o.cv_grid = app->add_option("--cv-grid", f.cv_grid, "log-spaced grid lo:hi:count");
  o.alpha = app->add_option("--alpha", f.alpha, "tail probability per side");
  o.draws = app->add_option("--b", f.draws, "resample count B");
  o.seed = app->add_option("--seed", f.seed, "resampling seed");
  o.scales = app->add_option("--scales", f.scales, "detail scales lo:hi entering D");
  o.drop_remainder = app->add_flag("--drop-remainder", f.drop_remainder,
                                   "discard trailing samples that do not fill a segment");
  o.include_coarse = app->add_flag("--include-coarse", f.include_coarse,
                                   "add the coarse coefficients to the distance");
  o.exact_quantiles = app->add_flag("--exact-quantiles", f.exact_quantiles,
                                    "weighted quantiles instead of Monte Carlo draws");
  o.min_history = app->add_option("--min-history", f.min_history,
                                  "first rolling cut (eval)");
  o.truth = app->add_option("--truth", f.truth, "CSV with the true next segment");
  o.forecast = app->add_option("--forecast", f.forecast, "external forecast CSV (eval)");
  return o;
}

std::pair<std::string, std::string> split_pair(const std::string& text,
                                               const char* flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    wkf::fail(wkf::ErrorKind::kConfig, std::string(flag) + " expects lo:hi");
  }
  return {text.substr(0, colon), text.substr(colon + 1)};
}

double to_double(const std::string& s, const char* flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  wkf::fail(wkf::ErrorKind::kConfig, std::string(flag) + ": '" + s + "' is not a number");
}

wkf::RunConfig build_config(const CommonFlags& f, const Options& o) {
  wkf::RunConfig c = o.config->count() ? wkf::load_config(f.config_path) : wkf::RunConfig{};
  if (o.input->count()) c.input = f.input;
  if (o.output->count()) c.output = f.output;
  if (o.period->count()) c.period = f.period;
  if (o.filter->count()) c.filter = wkf::parse_filter_id(f.filter);
  if (o.j0->count()) c.j0 = f.j0;
  if (o.kernel->count()) c.kernel = wkf::parse_kernel_family(f.kernel);
  if (o.weighting->count()) c.weighting = wkf::parse_weighting(f.weighting);
  if (o.bandwidth->count()) {
    if (f.bandwidth == "cv") {
      c.bandwidth.reset();
    } else {
      c.bandwidth = to_double(f.bandwidth, "--h");
      if (!o.cv_grid->count()) c.cv_grid.reset();
    }
  }
  if (o.cv_grid->count()) {
    const auto [lo, rest] = split_pair(f.cv_grid, "--cv-grid");
    const auto [hi, count] = split_pair(rest, "--cv-grid");
    const double n = to_double(count, "--cv-grid");
    if (!(n >= 1.0) || n != static_cast<double>(static_cast<std::size_t>(n))) {
      wkf::fail(wkf::ErrorKind::kConfig, "--cv-grid count must be a positive integer");
    }
    c.cv_grid = wkf::GridSpec{to_double(lo, "--cv-grid"), to_double(hi, "--cv-grid"),
                              static_cast<std::size_t>(n)};
    if (!o.bandwidth->count()) c.bandwidth.reset();
  }
  if (o.alpha->count()) c.alpha = f.alpha;
  if (o.draws->count()) c.draws = f.draws;
  if (o.seed->count()) c.seed = f.seed;
  if (o.scales->count()) {
    const auto [lo, hi] = split_pair(f.scales, "--scales");
    c.scales = wkf::ScaleRange{static_cast<int>(to_double(lo, "--scales")),
                               static_cast<int>(to_double(hi, "--scales"))};
  }
  if (o.drop_remainder->count()) c.drop_remainder = true;
  if (o.include_coarse->count()) c.include_coarse = true;
  if (o.exact_quantiles->count()) c.exact_quantiles = true;
  if (o.min_history->count()) c.min_history = f.min_history;
  if (o.truth->count()) c.truth = f.truth;
  if (o.forecast->count()) c.forecast = f.forecast;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet-kernel one-step-ahead forecasting of segmented series"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  struct Sub {
    wkf::Command command;
    CLI::App* app;
    CommonFlags flags;
    Options options;
  };
  Sub subs[] = {
      {wkf::Command::kPredict, app.add_subcommand("predict", "forecast the next segment"), {}, {}},
      {wkf::Command::kCv, app.add_subcommand("cv", "cross-validation table for the bandwidth"), {}, {}},
      {wkf::Command::kInterval, app.add_subcommand("interval", "forecast with pointwise prediction interval"), {}, {}},
      {wkf::Command::kEval, app.add_subcommand("eval", "rolling-origin RMAE against baselines"), {}, {}},
  };
  for (auto& s : subs) s.options = add_run_flags(s.app, s.flags);

  auto* gen = app.add_subcommand("generate", "write a synthetic stationary series");
  std::string kind = "seasonal_ar";
  wkf::SyntheticSpec spec;
  std::string gen_output;
  gen->add_option("--kind", kind, "seasonal_ar | markov_functional");
  gen->add_option("--segments", spec.segments, "number of segments");
  gen->add_option("--p", spec.period, "segment length P");
  gen->add_option("--noise", spec.noise, "noise scale");
  gen->add_option("--seed", spec.seed, "generator seed");
  gen->add_option("--contraction", spec.contraction, "markov_functional contraction");
  gen->add_option("--ar", spec.ar_coefficient, "seasonal_ar AR(1) coefficient");
  gen->add_option("-o,--output", gen_output, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (gen->parsed()) {
    try {
      spec.kind = wkf::parse_synthetic_kind(kind);
      const auto parent = std::filesystem::path(gen_output).parent_path();
      std::error_code ec;
      if (!parent.empty()) std::filesystem::create_directories(parent, ec);
      wkf::write_series(gen_output, wkf::gen_synthetic(spec));
      return 0;
    } catch (const wkf::Error& e) {
      std::cerr << "wkf generate: " << e.what() << '\n';
      return e.kind() == wkf::ErrorKind::kConfig ? 2 : 1;
    }
  }

  for (auto& s : subs) {
    if (!s.app->parsed()) continue;
    wkf::RunConfig config;
    try {
      config = build_config(s.flags, s.options);
    } catch (const wkf::Error& e) {
      std::cerr << "wkf " << s.app->get_name() << ": " << e.what() << '\n'
                << s.app->help();
      return 2;
    }
    return wkf::run_command(s.command, config, std::cerr);
  }
  return 2;
}
