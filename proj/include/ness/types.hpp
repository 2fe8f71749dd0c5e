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

#include <complex>

#include <Eigen/Core>

namespace ness {

using cplx = std::complex<double>;

using Mat2 = Eigen::Matrix<cplx, 2, 2>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Mat8 = Eigen::Matrix<cplx, 8, 8>;
using Vec2 = Eigen::Matrix<cplx, 2, 1>;
using Vec4 = Eigen::Matrix<cplx, 4, 1>;
using Vec8 = Eigen::Matrix<cplx, 8, 1>;

// Superoperators on the 8x8 chain space act on column-major vec(rho).
using SuperOp = Eigen::MatrixXcd;
using SuperVec = Eigen::VectorXcd;

inline constexpr int kChainDim = 8;
inline constexpr int kLevels = 8;

}  // namespace ness
