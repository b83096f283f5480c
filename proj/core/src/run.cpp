// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#include "wkf/run.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wkf/error.hpp"
#include "wkf/evaluation.hpp"
#include "wkf/intervals.hpp"
#include "wkf/series_io.hpp"

namespace wkf {
namespace {

using nlohmann::json;

namespace fs = std::filesystem;

const char* const kConfigKeys[] = {
    "period", "filter", "j0", "scales", "include_coarse", "kernel",
    "weighting", "bandwidth", "cv_grid", "alpha", "draws", "seed",
    "exact_quantiles", "drop_remainder", "min_history", "input", "output",
    "truth", "forecast"};

json config_json(const RunConfig& c) {
  json j;
  j["period"] = c.period;
  j["filter"] = std::string(to_string(c.filter));
  j["j0"] = c.j0;
  j["scales"] = c.scales ? json::array({c.scales->lo, c.scales->hi}) : json(nullptr);
  j["include_coarse"] = c.include_coarse;
  j["kernel"] = std::string(to_string(c.kernel));
  j["weighting"] = std::string(to_string(c.weighting));
  j["bandwidth"] = c.bandwidth ? json(*c.bandwidth) : json("cv");
  j["cv_grid"] = c.cv_grid ? json{{"lo", c.cv_grid->lo},
                                  {"hi", c.cv_grid->hi},
                                  {"count", c.cv_grid->count}}
                           : json(nullptr);
  j["alpha"] = c.alpha;
  j["draws"] = c.draws;
  j["seed"] = c.seed;
  j["exact_quantiles"] = c.exact_quantiles;
  j["drop_remainder"] = c.drop_remainder;
  j["min_history"] = c.min_history;
  j["input"] = c.input;
  j["output"] = c.output;
  j["truth"] = c.truth;
  j["forecast"] = c.forecast;
  return j;
}

RunConfig config_from(const json& j) {
  if (!j.is_object()) fail(ErrorKind::kConfig, "config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* k : kConfigKeys) known = known || key == k;
    if (!known) fail(ErrorKind::kConfig, "unknown config key '" + key + "'");
  }
  RunConfig c;
  try {
    if (j.contains("period")) c.period = j.at("period").get<std::size_t>();
    if (j.contains("filter")) c.filter = parse_filter_id(j.at("filter").get<std::string>());
    if (j.contains("j0")) c.j0 = j.at("j0").get<int>();
    if (j.contains("scales") && !j.at("scales").is_null()) {
      const auto& s = j.at("scales");
      if (!s.is_array() || s.size() != 2) {
        fail(ErrorKind::kConfig, "'scales' must be [lo, hi]");
      }
      c.scales = ScaleRange{s[0].get<int>(), s[1].get<int>()};
    }
    if (j.contains("include_coarse")) c.include_coarse = j.at("include_coarse").get<bool>();
    if (j.contains("kernel")) c.kernel = parse_kernel_family(j.at("kernel").get<std::string>());
    if (j.contains("weighting")) c.weighting = parse_weighting(j.at("weighting").get<std::string>());
    if (j.contains("bandwidth")) {
      const auto& b = j.at("bandwidth");
      if (b.is_number()) {
        c.bandwidth = b.get<double>();
      } else if (!(b.is_string() && b.get<std::string>() == "cv") && !b.is_null()) {
        fail(ErrorKind::kConfig, "'bandwidth' must be a number or \"cv\"");
      }
    }
    if (j.contains("cv_grid") && !j.at("cv_grid").is_null()) {
      const auto& g = j.at("cv_grid");
      c.cv_grid = GridSpec{g.at("lo").get<double>(), g.at("hi").get<double>(),
                           g.at("count").get<std::size_t>()};
    }
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (j.contains("draws")) c.draws = j.at("draws").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("exact_quantiles")) c.exact_quantiles = j.at("exact_quantiles").get<bool>();
    if (j.contains("drop_remainder")) c.drop_remainder = j.at("drop_remainder").get<bool>();
    if (j.contains("min_history")) c.min_history = j.at("min_history").get<std::size_t>();
    if (j.contains("input")) c.input = j.at("input").get<std::string>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("truth")) c.truth = j.at("truth").get<std::string>();
    if (j.contains("forecast")) c.forecast = j.at("forecast").get<std::string>();
  } catch (const json::exception& e) {
    fail(ErrorKind::kConfig, std::string("malformed config: ") + e.what());
  }
  return c;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) fail(ErrorKind::kIo, "write to '" + path.string() + "' failed");
}

fs::path prepare_output(const RunConfig& config) {
  fs::path dir = config.output.empty() ? fs::path(".") : fs::path(config.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create '" + dir.string() + "': " + ec.message());
  return dir;
}

struct LoadedSeries {
  SegmentedSeries segmented;
  std::vector<std::string> warnings;
};

LoadedSeries load_segments(const RunConfig& config) {
  if (config.input.empty()) fail(ErrorKind::kConfig, "no input series given");
  const auto series = load_series(config.input);
  LoadedSeries out{segment_series(series, config.period, config.drop_remainder), {}};
  if (out.segmented.dropped > 0) {
    out.warnings.push_back("dropped " + std::to_string(out.segmented.dropped) +
                           " trailing samples (series length not a multiple of P)");
  }
  return out;
}

std::optional<std::vector<double>> load_truth(const RunConfig& config) {
  if (config.truth.empty()) return std::nullopt;
  auto truth = load_series(config.truth);
  if (truth.size() != config.period) {
    fail(ErrorKind::kShape, "truth file holds " + std::to_string(truth.size()) +
                                " values, expected P=" + std::to_string(config.period));
  }
  return truth;
}

json cv_json(const CvResult& cv) {
  return json{{"grid", cv.grid},
              {"values", cv.cv_values},
              {"selected_index", cv.best_index},
              {"selected_h", cv.best_bandwidth()}};
}

struct Fit {
  PyramidHistory history;
  std::optional<CvResult> cv;
  double h = 0.0;
  PredictionResult prediction;
};

Fit fit(const RunConfig& config, std::span<const Segment> segments) {
  const auto pc = config.predictor();
  if (segments.size() < 2) {
    fail(ErrorKind::kInsufficientHistory,
         "at least 2 segments are needed, got " + std::to_string(segments.size()));
  }
  Fit f{PyramidHistory::from_segments(segments, pc.filter, pc.j0), std::nullopt, 0.0, {}};
  if (pc.bandwidth) {
    f.h = *pc.bandwidth;
  } else {
    const auto grid = pc.cv_grid.empty() ? default_bandwidth_grid(f.history, pc.distance)
                                         : pc.cv_grid;
    f.cv = cv_bandwidth(f.history, grid, pc, config.period);
    f.h = f.cv->best_bandwidth();
  }
  f.prediction = predict_coefficients(f.history, KernelSpec(pc.kernel, f.h), pc);
  f.prediction.curve.resize(config.period);
  return f;
}

json base_summary(Command command, const RunConfig& config,
                  const SegmentedSeries& segmented) {
  json s;
  s["command"] = std::string(to_string(command));
  s["config"] = config_json(config);
  s["seed"] = config.seed;
  s["n_segments"] = segmented.segments.size();
  s["segment_length"] = config.period;
  s["padded_length"] = std::size_t{1} << ceil_log2(config.period);
  s["dropped_samples"] = segmented.dropped;
  return s;
}

std::string cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

void write_prediction_files(const fs::path& dir, std::span<const double> curve,
                            const std::optional<std::vector<double>>& truth,
                            const PredictionInterval* interval,
                            RunOutcome& outcome) {
  std::ostringstream pred;
  pred << "t_index,predicted" << (interval ? ",lower,upper" : "") << '\n';
  std::ostringstream plot;
  plot << "t_index,truth,predicted,lower,upper\n";
  for (std::size_t t = 0; t < curve.size(); ++t) {
    pred << t + 1 << ',' << format_double(curve[t]);
    std::optional<double> lo, hi;
    if (interval) {
      lo = interval->lower[t];
      hi = interval->upper[t];
      pred << ',' << format_double(*lo) << ',' << format_double(*hi);
    }
    pred << '\n';
    plot << t + 1 << ',' << cell(truth ? std::optional<double>((*truth)[t]) : std::nullopt)
         << ',' << format_double(curve[t]) << ',' << cell(lo) << ',' << cell(hi) << '\n';
  }
  write_text(dir / "prediction.csv", pred.str());
  write_text(dir / "plot_data.csv", plot.str());
  outcome.files.push_back(dir / "prediction.csv");
  outcome.files.push_back(dir / "plot_data.csv");
}

void finish_summary(const fs::path& dir, json& summary, RunOutcome& outcome) {
  summary["warnings"] = outcome.warnings;
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  outcome.files.push_back(dir / "summary.json");
}

RunOutcome run_forecast(Command command, const RunConfig& config, bool intervals) {
  config.validate();
  const auto loaded = load_segments(config);
  const auto truth = load_truth(config);
  const auto dir = prepare_output(config);
  RunOutcome outcome;
  outcome.warnings = loaded.warnings;

  const auto& segments = loaded.segmented.segments;
  const Fit f = fit(config, segments);
  json summary = base_summary(command, config, loaded.segmented);
  summary["h_used"] = f.h;
  summary["effective_sample"] = f.prediction.effective_sample;
  summary["weights"] = f.prediction.weights;
  if (f.cv) summary["cv"] = cv_json(*f.cv);
  if (truth) summary["rmae"] = rmae(f.prediction.curve, *truth).rmae;

  std::optional<PredictionInterval> interval;
  if (intervals) {
    const auto pc = config.predictor();
    ResamplingPlan plan;
    plan.draws = config.draws;
    plan.alpha = config.alpha;
    plan.seed = config.seed;
    plan.weights = resample_weights(f.history, KernelSpec(pc.kernel, f.h), pc.distance);
    std::vector<std::vector<double>> next_blocks;
    for (std::size_t m = 1; m < f.history.size(); ++m) {
      next_blocks.push_back(f.history.coefficients(m));
    }
    interval = prediction_interval(
        next_blocks, f.prediction.curve, plan,
        config.exact_quantiles ? QuantileMode::kExact : QuantileMode::kMonteCarlo);
    outcome.warnings.insert(outcome.warnings.end(), interval->warnings.begin(),
                            interval->warnings.end());
    summary["interval"] = json{{"alpha", config.alpha},
                               {"coverage_target", 1.0 - 2.0 * config.alpha},
                               {"draws", interval->b_used},
                               {"mode", config.exact_quantiles ? "exact" : "monte_carlo"}};
    if (truth) {
      std::size_t covered = 0;
      for (std::size_t t = 0; t < truth->size(); ++t) {
        covered += interval->lower[t] <= (*truth)[t] && (*truth)[t] <= interval->upper[t];
      }
      summary["interval"]["truth_covered"] = covered;
    }
  }

  write_prediction_files(dir, f.prediction.curve, truth,
                         interval ? &*interval : nullptr, outcome);
  finish_summary(dir, summary, outcome);
  return outcome;
}

}  // namespace

std::vector<double> GridSpec::values() const {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0 || !std::isfinite(hi)) {
    fail(ErrorKind::kConfig, "cv grid needs 0 < lo <= hi and count >= 1");
  }
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t g = 0; g < count; ++g) {
    out[g] = lo * std::exp(step * static_cast<double>(g));
  }
  out.back() = hi;
  return out;
}

void RunConfig::validate() const {
  if (period < 2) fail(ErrorKind::kConfig, "segment length P (--p) must be >= 2");
  if (!(alpha > 0.0 && alpha < 0.5)) {
    fail(ErrorKind::kConfig, "alpha must lie in (0, 0.5)");
  }
  if (draws < 1) fail(ErrorKind::kConfig, "B (--b) must be >= 1");
  if (bandwidth && cv_grid) {
    fail(ErrorKind::kConfig, "give either a fixed bandwidth or a cv grid, not both");
  }
  if (bandwidth && !(std::isfinite(*bandwidth) && *bandwidth > 0.0)) {
    fail(ErrorKind::kConfig, "bandwidth must be finite and > 0");
  }
  if (cv_grid) (void)cv_grid->values();
  const int levels = ceil_log2(period);
  if (j0 < 0 || j0 >= levels) {
    fail(ErrorKind::kConfig, "j0 must lie in [0, " + std::to_string(levels - 1) + "]");
  }
  if (scales) (void)resolve_scales(DistanceOptions{scales, false}, j0, levels);
  if (min_history < 2) fail(ErrorKind::kConfig, "min_history must be >= 2");
}

PredictorConfig RunConfig::predictor() const {
  PredictorConfig pc;
  pc.filter = filter;
  pc.j0 = j0;
  pc.distance.scales = scales;
  pc.distance.include_coarse = include_coarse;
  pc.kernel = kernel;
  pc.weighting = weighting;
  pc.bandwidth = bandwidth;
  if (cv_grid) pc.cv_grid = cv_grid->values();
  return pc;
}

std::string config_to_json(const RunConfig& config) {
  return config_json(config).dump(2);
}

RunConfig config_from_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorKind::kConfig, "config is not valid JSON");
  if (j.is_object() && j.contains("config") && j.contains("command")) {
    return config_from(j.at("config"));
  }
  return config_from(j);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kConfig, "cannot open config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

std::string_view to_string(Command command) noexcept {
  switch (command) {
    case Command::kPredict: return "predict";
    case Command::kCv: return "cv";
    case Command::kInterval: return "interval";
    case Command::kEval: return "eval";
  }
  return "unknown";
}

RunOutcome run_predict(const RunConfig& config) {
  return run_forecast(Command::kPredict, config, false);
}

RunOutcome run_interval(const RunConfig& config) {
  return run_forecast(Command::kInterval, config, true);
}

RunOutcome run_cv(const RunConfig& config) {
  config.validate();
  const auto loaded = load_segments(config);
  const auto dir = prepare_output(config);
  RunOutcome outcome;
  outcome.warnings = loaded.warnings;

  const auto pc = config.predictor();
  const auto& segments = loaded.segmented.segments;
  const auto history = PyramidHistory::from_segments(segments, pc.filter, pc.j0);
  std::vector<double> grid;
  if (pc.bandwidth) {
    grid = {*pc.bandwidth};
  } else if (!pc.cv_grid.empty()) {
    grid = pc.cv_grid;
  } else {
    grid = default_bandwidth_grid(history, pc.distance);
  }
  const auto cv = cv_bandwidth(history, grid, pc, config.period);

  std::ostringstream table;
  table << "h,cv,selected\n";
  for (std::size_t g = 0; g < cv.grid.size(); ++g) {
    table << format_double(cv.grid[g]) << ',' << format_double(cv.cv_values[g]) << ','
          << (g == cv.best_index ? 1 : 0) << '\n';
  }
  write_text(dir / "cv.csv", table.str());
  outcome.files.push_back(dir / "cv.csv");

  json summary = base_summary(Command::kCv, config, loaded.segmented);
  summary["h_used"] = cv.best_bandwidth();
  summary["cv"] = cv_json(cv);
  finish_summary(dir, summary, outcome);
  return outcome;
}

RunOutcome run_eval(const RunConfig& config) {
  config.validate();
  const auto series = load_series(config.input);
  const auto segmented = segment_series(series, config.period, config.drop_remainder);
  const auto dir = prepare_output(config);
  RunOutcome outcome;
  if (segmented.dropped > 0) {
    outcome.warnings.push_back("dropped " + std::to_string(segmented.dropped) +
                               " trailing samples (series length not a multiple of P)");
  }
  const std::span<const double> usable(series.data(),
                                       segmented.segments.size() * config.period);

  RollingOptions options;
  options.min_history = config.min_history;
  options.method_id = "wk";
  const auto wk = rolling_eval(usable, config.period,
                               make_wk_forecaster(config.predictor()), options);
  options.method_id = "naive_seasonal";
  const auto naive = rolling_eval(usable, config.period, make_naive_forecaster(), options);

  std::ostringstream table;
  table << "n0,rmae_wk,rmae_naive\n";
  for (std::size_t r = 0; r < wk.reports.size(); ++r) {
    table << wk.reports[r].n0 << ',' << format_double(wk.reports[r].rmae) << ','
          << format_double(naive.reports[r].rmae) << '\n';
  }
  write_text(dir / "eval.csv", table.str());
  outcome.files.push_back(dir / "eval.csv");

  json summary = base_summary(Command::kEval, config, segmented);
  summary["rolling"] = json{
      {"cuts", wk.reports.size()},
      {"wk", {{"mean_rmae", wk.mean_rmae}, {"median_rmae", wk.median_rmae}}},
      {"naive_seasonal", {{"mean_rmae", naive.mean_rmae}, {"median_rmae", naive.median_rmae}}}};

  // Hold-out: the last block, forecast from everything before it.
  const auto& segments = segmented.segments;
  const auto& last = segments.back();
  const Fit f = fit(config, std::span<const Segment>(segments).first(segments.size() - 1));
  json holdout{{"n0", last.index},
               {"h_used", f.h},
               {"rmae_wk", rmae(f.prediction.curve, last.values).rmae},
               {"rmae_naive", rmae(naive_seasonal(std::span<const Segment>(segments).first(
                                       segments.size() - 1)).values,
                                   last.values).rmae}};
  if (f.cv) holdout["cv"] = cv_json(*f.cv);
  if (!config.forecast.empty()) {
    const auto external = load_series(config.forecast);
    const auto truth = load_truth(config);
    holdout["rmae_external"] = rmae(external, truth ? *truth : last.values).rmae;
  }
  summary["holdout"] = holdout;
  finish_summary(dir, summary, outcome);
  return outcome;
}

RunOutcome run(Command command, const RunConfig& config) {
  switch (command) {
    case Command::kPredict: return run_predict(config);
    case Command::kCv: return run_cv(config);
    case Command::kInterval: return run_interval(config);
    case Command::kEval: return run_eval(config);
  }
  fail(ErrorKind::kConfig, "unknown command");
}

int run_command(Command command, const RunConfig& config, std::ostream& err) {
  try {
    const auto outcome = run(command, config);
    for (const auto& w : outcome.warnings) err << "warning: " << w << '\n';
    return 0;
  } catch (const Error& e) {
    err << "wkf " << to_string(command) << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::kConfig ? 2 : 1;
  } catch (const std::exception& e) {
    err << "wkf " << to_string(command) << ": " << e.what() << '\n';
    return 1;
  }
}

}  // namespace wkf
