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

#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>

#include "ness/discord_search.hpp"
#include "ness/types.hpp"

namespace ness {

/// Two of the three chain spins. The first spin is subsystem A and the
/// second is B (the measured side by default).
enum class SpinPair { p12, p13, p23 };

SpinPair parse_pair(std::string_view text);  // "12", "13" or "23"
std::string to_string(SpinPair pair);
/// Kept spins (A, B) and the traced-out spin, 1-based.
struct PairLayout {
  int a;
  int b;
  int traced;
};
PairLayout layout(SpinPair pair);

struct MeasurementAngles {
  double theta = 0.0;
  double phi = 0.0;

  /// theta in [0, pi), phi in [0, 2 pi); the projector pair is unchanged.
  MeasurementAngles normalized() const;
};

/// Subsystem on which the projective measurement acts.
enum class MeasuredSide { A, B };

Mat4 partial_trace(const Mat8& rho, SpinPair pair);
Mat2 reduce_to_a(const Mat4& rho_ab);
Mat2 reduce_to_b(const Mat4& rho_ab);
/// rho on (B, A) ordering.
Mat4 swap_subsystems(const Mat4& rho_ab);

/// -tr(rho log2 rho). Eigenvalues in [-1e-9, 0) count as 0; below -1e-6
/// throws InvalidState.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

/// S(A) + S(B) - S(AB), bits.
double mutual_information(const Mat4& rho_ab);

/// Wootters concurrence, computed from the singular values of
/// sqrt(rho) (Y x Y) sqrt(rho)^* (the square roots of the eigenvalues of
/// rho (Y x Y) rho^* (Y x Y)).
double concurrence(const Mat4& rho_ab);

/// Pi_1 and Pi_2 on B for the given angles.
std::pair<Mat2, Mat2> measurement_projectors(const MeasurementAngles& angles);

/// sum_j q_j S(rho_A^j) for the measurement on B.
double conditional_entropy_measured(const Mat4& rho_ab, const MeasurementAngles& angles);

struct DiscordOptions {
  SearchOptions search;
  MeasuredSide side = MeasuredSide::B;
};

struct DiscordResult {
  double discord = 0.0;
  double classical_correlation = 0.0;
  double mutual_information = 0.0;
  MeasurementAngles optimum;
};

/// D = I - max_Pi [S(A) - S_Pi(A|B)] and C = I - D from one search.
DiscordResult quantum_discord(const Mat4& rho_ab, const DiscordOptions& opts = {});
double classical_correlation(const Mat4& rho_ab, const DiscordOptions& opts = {});

struct CorrelationRecord {
  double discord = 0.0;
  double classical_correlation = 0.0;
  double mutual_information = 0.0;
  double concurrence = 0.0;
  MeasurementAngles optimum;
};

CorrelationRecord correlation_record(const Mat4& rho_ab, const DiscordOptions& opts = {});

/// Correlations of the pair in the pure eigenstate phi_5 at coupling k.
CorrelationRecord pure_state_pair_correlations(double k, SpinPair pair, double J = 1.0,
                                               const DiscordOptions& opts = {});

}  // namespace ness
