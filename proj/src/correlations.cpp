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

#include "ness/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ness/density.hpp"
#include "ness/errors.hpp"
#include "ness/spectrum.hpp"

namespace ness {
namespace {

int bit_of(int spin) { return 3 - spin; }

Mat4 sigma_yy() {
  Mat4 y = Mat4::Zero();
  // (sigma_y x sigma_y) in the |00>, |01>, |10>, |11> basis.
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

Mat4 matrix_sqrt(const Mat4& rho) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (rho + rho.adjoint()));
  Eigen::Vector4d s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

SpinPair parse_pair(std::string_view text) {
  if (text == "12") return SpinPair::p12;
  if (text == "13") return SpinPair::p13;
  if (text == "23") return SpinPair::p23;
  throw InvalidParameter("unknown spin pair '" + std::string(text) + "' (expected 12, 13 or 23)");
}

std::string to_string(SpinPair pair) {
  switch (pair) {
    case SpinPair::p12: return "12";
    case SpinPair::p13: return "13";
    case SpinPair::p23: return "23";
  }
  return "?";
}

PairLayout layout(SpinPair pair) {
  switch (pair) {
    case SpinPair::p12: return {1, 2, 3};
    case SpinPair::p13: return {1, 3, 2};
    case SpinPair::p23: return {2, 3, 1};
  }
  return {1, 3, 2};
}

MeasurementAngles MeasurementAngles::normalized() const {
  MeasurementAngles m{std::fmod(theta, std::numbers::pi), std::fmod(phi, 2 * std::numbers::pi)};
  if (m.theta < 0.0) m.theta += std::numbers::pi;
  if (m.phi < 0.0) m.phi += 2 * std::numbers::pi;
  return m;
}

Mat4 partial_trace(const Mat8& rho, SpinPair pair) {
  const PairLayout L = layout(pair);
  auto index = [&](int na, int nb, int nc) {
    return (na << bit_of(L.a)) | (nb << bit_of(L.b)) | (nc << bit_of(L.traced));
  };
  Mat4 out = Mat4::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp)
          for (int c = 0; c < 2; ++c)
            out(2 * a + b, 2 * ap + bp) += rho(index(a, b, c), index(ap, bp, c));
  return out;
}

Mat2 reduce_to_a(const Mat4& rho) {
  Mat2 out;
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap) out(a, ap) = rho(2 * a, 2 * ap) + rho(2 * a + 1, 2 * ap + 1);
  return out;
}

Mat2 reduce_to_b(const Mat4& rho) {
  Mat2 out;
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp) out(b, bp) = rho(b, bp) + rho(2 + b, 2 + bp);
  return out;
}

Mat4 swap_subsystems(const Mat4& rho) {
  Mat4 out;
  auto sw = [](int i) { return 2 * (i & 1) + (i >> 1); };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(sw(i), sw(j)) = rho(i, j);
  return out;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  const Eigen::VectorXd ev = clamped_spectrum(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 0.0) s -= ev(i) * std::log2(ev(i));
  return s;
}

double mutual_information(const Mat4& rho) {
  return von_neumann_entropy(reduce_to_a(rho)) + von_neumann_entropy(reduce_to_b(rho)) -
         von_neumann_entropy(rho);
}

double concurrence(const Mat4& rho) {
  const Mat4 root = matrix_sqrt(rho);
  const Mat4 m = root * sigma_yy() * root.conjugate();
  Eigen::JacobiSVD<Mat4> svd(m);
  const Eigen::Vector4d s = svd.singularValues();  // descending
  return std::clamp(s(0) - s(1) - s(2) - s(3), 0.0, 1.0);
}

std::pair<Mat2, Mat2> measurement_projectors(const MeasurementAngles& angles) {
  const double c = std::cos(angles.theta);
  const double s = std::sin(angles.theta);
  const cplx e = std::polar(1.0, angles.phi);
  const Vec2 t1(c, e * s);
  const Vec2 t2(std::conj(e) * s, -c);
  return {t1 * t1.adjoint(), t2 * t2.adjoint()};
}

double conditional_entropy_measured(const Mat4& rho, const MeasurementAngles& angles) {
  return MeasuredEntropy(rho)(angles.theta, angles.phi);
}

DiscordResult quantum_discord(const Mat4& rho_ab, const DiscordOptions& opts) {
  const Mat4 rho = opts.side == MeasuredSide::B ? rho_ab : swap_subsystems(rho_ab);
  const MeasuredEntropy f(rho);
  const SearchResult best = minimize_measured_entropy(f, opts.search);
  DiscordResult r;
  r.mutual_information = mutual_information(rho);
  r.classical_correlation = von_neumann_entropy(reduce_to_a(rho)) - best.entropy;
  r.discord = r.mutual_information - r.classical_correlation;
  r.optimum = MeasurementAngles{best.theta, best.phi}.normalized();
  return r;
}

double classical_correlation(const Mat4& rho_ab, const DiscordOptions& opts) {
  return quantum_discord(rho_ab, opts).classical_correlation;
}

CorrelationRecord correlation_record(const Mat4& rho_ab, const DiscordOptions& opts) {
  const DiscordResult d = quantum_discord(rho_ab, opts);
  return {d.discord, d.classical_correlation, d.mutual_information, concurrence(rho_ab),
          d.optimum};
}

CorrelationRecord pure_state_pair_correlations(double k, SpinPair pair, double J,
                                               const DiscordOptions& opts) {
  const Spectrum sp = analytic_eigensystem({J, 0.0, k});
  const Vec8& psi = sp.phi(5);
  const Mat8 rho = psi * psi.adjoint();
  return correlation_record(partial_trace(rho, pair), opts);
}

}  // namespace ness
