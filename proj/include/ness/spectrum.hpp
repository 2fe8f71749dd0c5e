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

#include <Eigen/Core>

#include "ness/types.hpp"

namespace ness {

/// Couplings of the three-spin chain
///
///   H = J sum_{i=1,2} (X_i X_{i+1} + Y_i Y_{i+1}) + h sum_i Z_i
///       + k (X_1 Z_2 X_3 + Y_1 Z_2 Y_3)
///
/// in units of J. The computational basis is |n1 n2 n3> with n1 the most
/// significant bit (index 4 n1 + 2 n2 + n3) and |1> the Z = +1 state.
struct ChainParams {
  double J = 1.0;
  double h = 0.0;
  double k = 0.0;

  /// Throws InvalidParameter for non-finite values or J <= 0.
  void validate() const;
  /// h >= 0 and k >= 0; other values are accepted but flagged by callers.
  bool in_tested_regime() const noexcept { return h >= 0.0 && k >= 0.0; }
};

/// Coefficients mixing the single- and double-excitation eigenstates.
struct MixingAngles {
  double B = 0.0;  // sqrt(8 J^2 + k^2)
  double sin_a1 = 0.0;
  double cos_a1 = 0.0;
  double sin_a2 = 0.0;
  double cos_a2 = 0.0;

  double sin_sum() const noexcept { return sin_a1 * cos_a2 + cos_a1 * sin_a2; }
  double sin_diff() const noexcept { return sin_a1 * cos_a2 - cos_a1 * sin_a2; }
};

MixingAngles mixing_angles(double k, double J = 1.0);

/// Eigensystem in fixed label order 1..8 (not sorted by energy):
///   e1 = -3h, e2 = 3h, e3 = h - 2k, e4 = -h + 2k,
///   e5 = -h - k - B, e6 = h + k - B, e7 = -h - k + B, e8 = h + k + B.
struct Spectrum {
  ChainParams params;
  std::array<double, kLevels> energies{};
  std::array<Vec8, kLevels> states{};
  MixingAngles angles;

  /// 1-based accessors matching the level labels above.
  double epsilon(int label) const { return energies.at(label - 1); }
  const Vec8& phi(int label) const { return states.at(label - 1); }
};

/// Ascending eigenpairs of an arbitrary Hermitian matrix.
struct NumericSpectrum {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd vectors;  // columns
};

struct TransitionFrequencies {
  double omega1 = 0.0;  // 2h - k - B
  double omega2 = 0.0;  // 2h - k + B
  double omega3 = 0.0;  // 2(h + k)
};

Mat8 build_hamiltonian(const ChainParams& p);

/// Pauli X acting on spin 1, 2 or 3.
Mat8 spin_flip(int spin);

Spectrum analytic_eigensystem(const ChainParams& p);

/// Throws ContractViolation if H is not Hermitian to 1e-12.
NumericSpectrum numeric_eigensystem(const Eigen::MatrixXcd& H);

/// Raw signed frequencies; no canonicalization.
TransitionFrequencies transition_frequencies(const ChainParams& p);

/// e3 - e5 = 2h + B - k.
double energy_gap_35(const ChainParams& p);

}  // namespace ness
