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

#include "ness/discord_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <omp.h>

namespace ness {
namespace {

constexpr double kOutcomeFloor = 1e-14;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Entropy of the normalized 2x2 Hermitian m / q.
double entropy2(const Mat2& m, double q) {
  const double a = m(0, 0).real() / q;
  const double d = m(1, 1).real() / q;
  const double b = std::abs(m(0, 1)) / q;
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * b * b);
  const double l1 = std::clamp(0.5 * (a + d + disc), 0.0, 1.0);
  const double l2 = std::clamp(0.5 * (a + d - disc), 0.0, 1.0);
  return -(xlog2x(l1) + xlog2x(l2));
}

bool better(const GridPoint& a, const GridPoint& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.theta_index != b.theta_index) return a.theta_index < b.theta_index;
  return a.phi_index < b.phi_index;
}

}  // namespace

MeasuredEntropy::MeasuredEntropy(const Mat4& rho) {
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp)
      for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap) blocks_[b][bp](a, ap) = rho(2 * a + b, 2 * ap + bp);
}

double MeasuredEntropy::operator()(double theta, double phi) const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const cplx e = std::polar(1.0, phi);
  const Vec2 t1(c, e * s);
  const Vec2 t2(std::conj(e) * s, -c);
  double total = 0.0;
  for (const Vec2* t : {&t1, &t2}) {
    Mat2 m = Mat2::Zero();
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp) m += std::conj((*t)(b)) * (*t)(bp) * blocks_[b][bp];
    const double q = m.trace().real();
    if (q < kOutcomeFloor) continue;
    total += q * entropy2(m, q);
  }
  return total;
}

AngleGrid full_sphere_grid(int theta_points, int phi_points) {
  return {0.0, std::numbers::pi / 2, theta_points, 0.0, 2 * std::numbers::pi, phi_points};
}

std::vector<double> evaluate_grid(const MeasuredEntropy& f, const AngleGrid& g, Execution exec) {
  std::vector<double> out(static_cast<std::size_t>(g.size()));
  const long n = g.size();
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (long idx = 0; idx < n; ++idx) {
      const int i = static_cast<int>(idx / g.phi_points);
      const int j = static_cast<int>(idx % g.phi_points);
      out[idx] = f(g.theta(i), g.phi(j));
    }
  } else {
    for (long idx = 0; idx < n; ++idx) {
      const int i = static_cast<int>(idx / g.phi_points);
      const int j = static_cast<int>(idx % g.phi_points);
      out[idx] = f(g.theta(i), g.phi(j));
    }
  }
  return out;
}

GridPoint grid_minimum(const MeasuredEntropy& f, const AngleGrid& g, Execution exec) {
  GridPoint best{f(g.theta(0), g.phi(0)), 0, 0};
  if (exec == Execution::serial) {
    for (int i = 0; i < g.theta_points; ++i)
      for (int j = 0; j < g.phi_points; ++j) {
        const GridPoint p{f(g.theta(i), g.phi(j)), i, j};
        if (better(p, best)) best = p;
      }
    return best;
  }
#pragma omp parallel
  {
    GridPoint local = best;
#pragma omp for schedule(static) nowait
    for (int i = 0; i < g.theta_points; ++i)
      for (int j = 0; j < g.phi_points; ++j) {
        const GridPoint p{f(g.theta(i), g.phi(j)), i, j};
        if (better(p, local)) local = p;
      }
#pragma omp critical(ness_grid_minimum)
    if (better(local, best)) best = local;
  }
  return best;
}

SearchResult minimize_measured_entropy(const MeasuredEntropy& f, const SearchOptions& opts) {
  const AngleGrid coarse = full_sphere_grid(opts.coarse_theta, opts.coarse_phi);
  const std::vector<double> table = evaluate_grid(f, coarse, opts.execution);
  SearchResult result;
  result.evaluations = static_cast<int>(table.size());

  // Local minima of the coarse table (phi periodic, theta clamped).
  const int nt = coarse.theta_points;
  const int np = coarse.phi_points;
  auto at = [&](int i, int j) { return table[static_cast<std::size_t>(i) * np + j]; };
  std::vector<GridPoint> minima;
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < np; ++j) {
      const double v = at(i, j);
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di) {
        const int ii = i + di;
        if (ii < 0 || ii >= nt) continue;
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          if (at(ii, (j + dj + np) % np) < v) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min) minima.push_back({v, i, j});
    }
  }
  std::sort(minima.begin(), minima.end(), better);
  if (minima.size() > static_cast<std::size_t>(opts.starts)) minima.resize(opts.starts);

  const double dtheta0 = (coarse.theta_hi - coarse.theta_lo) / (nt - 1);
  const double dphi0 = (coarse.phi_hi - coarse.phi_lo) / np;
  const int half = opts.zoom_points / 2;

  bool have = false;
  for (const auto& start : minima) {
    double theta = coarse.theta(start.theta_index);
    double phi = coarse.phi(start.phi_index);
    double value = start.value;
    double wt = dtheta0;
    double wp = dphi0;
    for (int round = 0; round < opts.max_rounds; ++round) {
      const double previous = value;
      double best_t = theta, best_p = phi;
      for (int a = -half; a <= half; ++a) {
        for (int b = -half; b <= half; ++b) {
          const double t = theta + wt * a / half;
          const double p = phi + wp * b / half;
          const double v = f(t, p);
          ++result.evaluations;
          if (v < value) {
            value = v;
            best_t = t;
            best_p = p;
          }
        }
      }
      theta = best_t;
      phi = best_p;
      wt /= 4.0;
      wp /= 4.0;
      if (round + 1 >= opts.zoom_rounds && previous - value < opts.tolerance) break;
    }
    if (!have || value < result.entropy) {
      result.entropy = value;
      result.theta = theta;
      result.phi = phi;
      have = true;
    }
  }

  // The projector pair is unchanged by theta -> theta + pi and phi -> phi + 2 pi.
  result.theta = std::fmod(result.theta, std::numbers::pi);
  if (result.theta < 0.0) result.theta += std::numbers::pi;
  result.phi = std::fmod(result.phi, 2 * std::numbers::pi);
  if (result.phi < 0.0) result.phi += 2 * std::numbers::pi;
  return result;
}

}  // namespace ness
