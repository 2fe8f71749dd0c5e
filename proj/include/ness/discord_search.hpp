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

#include <vector>

#include "ness/execution.hpp"
#include "ness/types.hpp"

namespace ness {

/// Conditional entropy S_Pi(A|B), in bits, of a fixed two-qubit state after
/// the projective measurement {|t1><t1|, |t2><t2|} on B with
///   |t1> = cos(theta)|0> + e^{i phi} sin(theta)|1>,
///   |t2> = -cos(theta)|1> + e^{-i phi} sin(theta)|0>.
/// Outcomes with probability below 1e-14 contribute nothing.
class MeasuredEntropy {
 public:
  explicit MeasuredEntropy(const Mat4& rho_ab);
  double operator()(double theta, double phi) const;

 private:
  // blocks_[b][b'](a, a') = <a b| rho |a' b'>
  Mat2 blocks_[2][2];
};

/// Rectangular angle grid. theta includes both endpoints, phi excludes the
/// upper one (it is periodic).
struct AngleGrid {
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  int theta_points = 1;
  double phi_lo = 0.0;
  double phi_hi = 0.0;
  int phi_points = 1;

  double theta(int i) const noexcept {
    return theta_points == 1 ? theta_lo
                             : theta_lo + (theta_hi - theta_lo) * i / (theta_points - 1);
  }
  double phi(int j) const noexcept { return phi_lo + (phi_hi - phi_lo) * j / phi_points; }
  long size() const noexcept { return static_cast<long>(theta_points) * phi_points; }
};

/// theta in [0, pi/2], phi in [0, 2 pi): covers every projector pair.
AngleGrid full_sphere_grid(int theta_points, int phi_points);

/// Row-major (theta, phi) table of entropy values.
std::vector<double> evaluate_grid(const MeasuredEntropy& f, const AngleGrid& g, Execution exec);

struct GridPoint {
  double value = 0.0;
  int theta_index = 0;
  int phi_index = 0;
};

/// Smallest value on the grid; ties go to the smaller theta index, then the
/// smaller phi index.
GridPoint grid_minimum(const MeasuredEntropy& f, const AngleGrid& g, Execution exec);

struct SearchOptions {
  int coarse_theta = 48;
  int coarse_phi = 96;
  /// Rounds always performed around each start.
  int zoom_rounds = 5;
  /// Extra rounds continue while the value still moves by > tolerance.
  int max_rounds = 12;
  /// Points per axis in a zoom window (odd, so the incumbent is resampled).
  int zoom_points = 9;
  /// Number of distinct coarse local minima refined.
  int starts = 4;
  double tolerance = 1e-10;
  Execution execution = Execution::parallel;
};

struct SearchResult {
  double entropy = 0.0;  // minimal S_Pi(A|B)
  double theta = 0.0;
  double phi = 0.0;
  int evaluations = 0;
};

/// Coarse grid followed by 4x-shrinking zoom grids around the best coarse
/// local minima. Deterministic.
SearchResult minimize_measured_entropy(const MeasuredEntropy& f, const SearchOptions& opts = {});

}  // namespace ness
