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

#include <Eigen/Core>

#include "ness/types.hpp"

namespace ness {

/// Tolerances shared by every density-matrix consumer.
inline constexpr double kClampTolerance = 1e-9;    // [-1e-9, 0] eigenvalues -> 0
inline constexpr double kInvalidEigenvalue = 1e-6;  // below -1e-6 is an error

/// (rho + rho^dag) / 2
Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& rho);

double min_eigenvalue(const Eigen::MatrixXcd& rho);

/// Eigenvalues of a Hermitian matrix with [-kClampTolerance, 0) mapped to 0.
/// Throws InvalidState when an eigenvalue is below -kInvalidEigenvalue.
Eigen::VectorXd clamped_spectrum(const Eigen::MatrixXcd& rho);

/// Hermitize, clamp small negative eigenvalues and renormalize the trace.
Eigen::MatrixXcd project_to_state(const Eigen::MatrixXcd& rho);

/// Hermitian to 1e-10, unit trace to 1e-10 and min eigenvalue >= -1e-9.
bool is_density_matrix(const Eigen::MatrixXcd& rho, double tol = 1e-10);

/// 1/2 || rho - sigma ||_1
double trace_distance(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma);

/// <psi| rho |psi> for a normalized ket.
double pure_fidelity(const Eigen::MatrixXcd& rho, const Eigen::VectorXcd& psi);

/// exp(-H / T) / Z computed by diagonalization.
Eigen::MatrixXcd gibbs_state(const Eigen::MatrixXcd& H, double T);

Eigen::MatrixXcd projector(const Eigen::VectorXcd& psi);

}  // namespace ness
