// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wkf/kernel.hpp"
#include "wkf/predictor.hpp"
#include "wkf/similarity.hpp"
#include "wkf/wavelet.hpp"

namespace wkf {

/// Log-spaced bandwidth grid, `--cv-grid lo:hi:count`.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;

  std::vector<double> values() const;
};

/// Everything a batch run needs. The JSON form (see config_to_json) is echoed
/// into every summary and can be fed back through `--config` to replay it.
struct RunConfig {
  std::size_t period = 0;  // P
  FilterId filter = FilterId::kSym6Interp;
  int j0 = 0;
  std::optional<ScaleRange> scales;
  bool include_coarse = false;
  KernelFamily kernel = KernelFamily::kGaussian;
  Weighting weighting = Weighting::kNormalized;
  /// Fixed bandwidth; empty means cross-validation.
  std::optional<double> bandwidth;
  std::optional<GridSpec> cv_grid;
  double alpha = 0.025;
  std::size_t draws = 500;
  std::uint64_t seed = 0;
  bool exact_quantiles = false;
  bool drop_remainder = false;
  std::size_t min_history = 3;
  std::string input;
  std::string output = ".";
  std::string truth;     // optional one-column CSV with the next block
  std::string forecast;  // optional external forecast to score (eval)

  /// Throws kConfig on any violated constraint.
  void validate() const;
  PredictorConfig predictor() const;
};

std::string config_to_json(const RunConfig& config);
/// Accepts a bare config object or a run summary holding one under "config".
RunConfig config_from_json(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

enum class Command { kPredict, kCv, kInterval, kEval };

std::string_view to_string(Command command) noexcept;

struct RunOutcome {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
};

/// Forecast of the block following the input series.
/// Writes prediction.csv, plot_data.csv and summary.json.
RunOutcome run_predict(const RunConfig& config);
/// Cross-validation table. Writes cv.csv and summary.json.
RunOutcome run_cv(const RunConfig& config);
/// Forecast plus pointwise prediction interval.
/// Writes prediction.csv (with lower/upper), plot_data.csv, summary.json.
RunOutcome run_interval(const RunConfig& config);
/// Rolling-origin RMAE of the kernel forecaster and the naive baseline, plus
/// an optional external forecast. Writes eval.csv and summary.json.
RunOutcome run_eval(const RunConfig& config);

RunOutcome run(Command command, const RunConfig& config);

/// Runs the command and maps failures to exit codes: 0 ok, 1 runtime error,
/// 2 usage or configuration error. Diagnostics go to `err`.
int run_command(Command command, const RunConfig& config, std::ostream& err);

}  // namespace wkf
