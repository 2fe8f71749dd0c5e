// Copyright 2026 The ness-chain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ness/correlations.hpp"
#include "ness/execution.hpp"
#include "ness/lindblad.hpp"

namespace ness {

struct TemperaturePoint {
  double t1 = 0.0;
  double t3 = 0.0;
};

/// One sweep: every (temperature, h, k) point crossed with every pair.
struct SweepConfig {
  std::vector<double> h_values;
  std::vector<double> k_values;
  std::vector<TemperaturePoint> temperatures;
  double gamma = 0.01;
  double J = 1.0;
  std::vector<SpinPair> pairs{SpinPair::p13, SpinPair::p23};
  SteadyStateMethod method = SteadyStateMethod::nullspace;
  JumpMode jump_mode = JumpMode::generic;
  MeasuredSide side = MeasuredSide::B;
  std::string output;
  bool emit_occupations = true;
  bool emit_gap = true;
};

/// `steps` evenly spaced values from min to max inclusive.
std::vector<double> grid_values(double min, double max, int steps);

/// Parses `key = value` lines; `#` starts a comment.
///
/// Grids: `h = v1, v2, ...` or `h_min`, `h_max`, `h_steps` (same for k).
/// Baths: `t_mean` and `delta_t` (comma lists give one series per
/// combination) or `t1` and `t3`.
/// Optional: gamma (0.01), J (1), pairs (13, 23), method (nullspace | rk4),
/// jump_mode (generic | analytic), measure_side (B | A), out,
/// emit_occupations (true), emit_gap (true).
///
/// Throws ConfigError naming unknown or missing keys and non-positive
/// derived temperatures.
SweepConfig parse_config(std::string_view text);

struct CorrelationRow {
  double h = 0.0;
  double k = 0.0;
  double gamma = 0.0;
  double t1 = 0.0;
  double t3 = 0.0;
  SpinPair pair = SpinPair::p13;
  double discord = 0.0;
  double classical_correlation = 0.0;
  double mutual_information = 0.0;
  double concurrence = 0.0;
  std::array<double, kLevels> occupations{};
  double gap_35 = 0.0;
  double residual_norm = 0.0;
  MeasurementAngles optimum;
};

struct SweepFailure {
  double h = 0.0;
  double k = 0.0;
  double t1 = 0.0;
  double t3 = 0.0;
  std::string message;
};

struct SweepResult {
  std::vector<CorrelationRow> rows;
  std::vector<SweepFailure> failures;
};

struct PointOptions {
  SteadyStateMethod method = SteadyStateMethod::nullspace;
  JumpMode jump_mode = JumpMode::generic;
  DiscordOptions discord;
};

/// Steady state of one parameter point reduced to each requested pair.
/// Throws on solver failure or when a row breaks D + C = I (1e-8),
/// C in [0, 1], sum P = 1 (1e-8) or residual < 1e-8.
std::vector<CorrelationRow> evaluate_point(const ChainParams& p, const BathSpec& bath,
                                           const std::vector<SpinPair>& pairs,
                                           const PointOptions& opts = {});

/// Rows ordered by (temperature series, h, k, pair); points that fail are
/// reported in `failures` and the run continues.
SweepResult run_sweep(const SweepConfig& config, Execution exec = Execution::parallel);

/// Significant digits for CSV output: 12, or NESS_PRECISION when set.
int output_precision();

void write_csv(std::ostream& os, const SweepConfig& config, const std::vector<CorrelationRow>& rows);
void write_failures_csv(std::ostream& os, const std::vector<SweepFailure>& failures);
/// `<output>.errors.csv`
std::string failures_path(const std::string& output);

nlohmann::json to_json(const CorrelationRow& row);

}  // namespace ness
