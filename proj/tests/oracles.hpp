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

// Reference constructions used only by the tests. They share no code with the
// library beyond the basic matrix typedefs.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat pauli(char which) {
  Mat s(2, 2);
  switch (which) {
    case 'x': s << 0, 1, 1, 0; break;
    case 'y': s << 0, cplx(0, 1), cplx(0, -1), 0; break;  // ordered (down, up)
    case 'z': s << -1, 0, 0, 1; break;  // |0> is spin down
    default: s = Mat::Identity(2, 2);
  }
  return s;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat kron3(char a, char b, char c) { return kron(kron(pauli(a), pauli(b)), pauli(c)); }

/// Pauli `which` on one site (1, 2 or 3) of the chain.
inline Mat site_operator(char which, int site) {
  return kron3(site == 1 ? which : 'i', site == 2 ? which : 'i', site == 3 ? which : 'i');
}

/// Chain Hamiltonian assembled term by term from tensor products.
inline Mat hamiltonian(double J, double h, double k) {
  Mat H = Mat::Zero(8, 8);
  H += J * (kron3('x', 'x', 'i') + kron3('y', 'y', 'i') + kron3('i', 'x', 'x') + kron3('i', 'y', 'y'));
  H += h * (kron3('z', 'i', 'i') + kron3('i', 'z', 'i') + kron3('i', 'i', 'z'));
  H += k * (kron3('x', 'z', 'x') + kron3('y', 'z', 'y'));
  return H;
}

struct Eigenspace {
  double energy;
  Mat projector;
};

/// Spectral projectors of a Hermitian matrix; levels within tol share one.
inline std::vector<Eigenspace> eigenspaces(const Mat& H, double tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  std::vector<Eigenspace> out;
  for (Eigen::Index i = 0; i < H.rows(); ++i) {
    const double e = es.eigenvalues()(i);
    const Mat p = es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    if (!out.empty() && std::abs(out.back().energy - e) < tol) {
      out.back().projector += p;
    } else {
      out.push_back({e, p});
    }
  }
  return out;
}

/// Lowering part of `coupling` at Bohr frequency omega: the sum of
/// P(e) coupling P(e + omega) over all level pairs. Independent of
/// eigenvector phases.
inline Mat lowering_part(const Mat& H, const Mat& coupling, double omega, double tol = 1e-9) {
  const auto spaces = eigenspaces(H);
  Mat A = Mat::Zero(H.rows(), H.cols());
  for (const auto& lo : spaces)
    for (const auto& hi : spaces)
      if (std::abs(hi.energy - lo.energy - omega) < tol) A += lo.projector * coupling * hi.projector;
  return A;
}

/// Positive Bohr frequencies at which `coupling` has a nonzero lowering part.
inline std::vector<double> bohr_frequencies(const Mat& H, const Mat& coupling, double tol = 1e-9) {
  const auto spaces = eigenspaces(H);
  std::vector<double> w;
  for (const auto& lo : spaces)
    for (const auto& hi : spaces) {
      const double d = hi.energy - lo.energy;
      if (d > tol && (lo.projector * coupling * hi.projector).norm() > 1e-12) w.push_back(d);
    }
  std::sort(w.begin(), w.end());
  std::vector<double> merged;
  for (double x : w)
    if (merged.empty() || x - merged.back() > tol) merged.push_back(x);
  return merged;
}

inline Mat gibbs(const Mat& H, double T) {
  const Mat e = (-H / T).exp();
  return e / e.trace();
}

inline double trace_distance(const Mat& a, const Mat& b) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a - b);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Entropy (bits) of a qubit with Bloch vector length r.
inline double qubit_entropy(double r) {
  r = std::min(r, 1.0);
  double s = 0.0;
  for (double p : {(1 + r) / 2, (1 - r) / 2})
    if (p > 0) s -= p * std::log2(p);
  return s;
}

inline double bloch_length(const Eigen::Matrix2cd& rho) {
  const double x = 2 * rho(0, 1).real();
  const double y = -2 * rho(0, 1).imag();
  const double z = (rho(0, 0) - rho(1, 1)).real();
  return std::sqrt(x * x + y * y + z * z);
}

inline double entropy(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-15) s -= p * std::log2(p);
  }
  return s;
}

/// Reduced state of A (first qubit) from a 4x4 state in |a b> order.
inline Mat marginal_a(const Mat& rho) {
  Mat r = Mat::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b) r(a, ap) += rho(2 * a + b, 2 * ap + b);
  return r;
}
inline Mat marginal_b(const Mat& rho) {
  Mat r = Mat::Zero(2, 2);
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp)
      for (int a = 0; a < 2; ++a) r(b, bp) += rho(2 * a + b, 2 * a + bp);
  return r;
}

inline double mutual_information(const Mat& rho) {
  return entropy(marginal_a(rho)) + entropy(marginal_b(rho)) - entropy(rho);
}

/// Discord with measurement on B, minimized over a dense theta x phi grid
/// with theta in [0, pi/2] (both ends) and phi in [0, 2 pi).
struct BruteForceDiscord {
  double discord;
  double classical;
  double theta;
  double phi;
};

inline BruteForceDiscord brute_force_discord(const Mat& rho, int n_theta = 1000, int n_phi = 2000) {
  // rho_A conditioned on B-vector v: M(v)_{a a'} = sum_{b b'} conj(v_b) rho(ab, a'b') v_b'.
  // Expanding in v lets each grid point cost a handful of multiplies.
  Eigen::Matrix2cd blk[2][2];
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp)
      for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap) blk[b][bp](a, ap) = rho(2 * a + b, 2 * ap + bp);

  auto conditioned = [&](cplx v0, cplx v1, double& prob) {
    const cplx v[2] = {v0, v1};
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp) m += std::conj(v[b]) * v[bp] * blk[b][bp];
    prob = m.trace().real();
    return m;
  };

  const double pi = std::acos(-1.0);
  double best = 1e300;
  double best_t = 0.0, best_p = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double t = 0.5 * pi * i / (n_theta - 1);
    const double c = std::cos(t), s = std::sin(t);
    for (int j = 0; j < n_phi; ++j) {
      const double p = 2 * pi * j / n_phi;
      const cplx e = std::polar(1.0, p);
      double total = 0.0;
      double q1 = 0.0, q2 = 0.0;
      const Eigen::Matrix2cd m1 = conditioned(c, e * s, q1);
      const Eigen::Matrix2cd m2 = conditioned(std::conj(e) * s, -c, q2);
      if (q1 > 1e-14) total += q1 * qubit_entropy(bloch_length(m1 / q1));
      if (q2 > 1e-14) total += q2 * qubit_entropy(bloch_length(m2 / q2));
      if (total < best) {
        best = total;
        best_t = t;
        best_p = p;
      }
    }
  }
  const double I = mutual_information(rho);
  const double C = entropy(marginal_a(rho)) - best;
  return {I - C, C, best_t, best_p};
}

/// Ginibre-distributed random two-qubit state (full rank almost surely).
template <class Rng>
Mat random_state(Rng& rng, int dim = 4) {
  std::normal_distribution<double> n;
  Mat G(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) G(i, j) = cplx(n(rng), n(rng));
  Mat rho = G * G.adjoint();
  return rho / rho.trace();
}

template <class Rng>
Mat random_unitary(Rng& rng, int dim) {
  std::normal_distribution<double> n;
  Mat G(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) G(i, j) = cplx(n(rng), n(rng));
  Eigen::HouseholderQR<Mat> qr(G);
  return qr.householderQ() * Mat::Identity(dim, dim);
}

inline Mat ket_projector(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

/// Bell states in |a b> order: Phi+, Phi-, Psi+, Psi-.
inline std::vector<Mat> bell_states() {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Mat> out;
  for (auto [i, j, sign] : {std::tuple{0, 3, 1.0}, {0, 3, -1.0}, {1, 2, 1.0}, {1, 2, -1.0}}) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(i) = r;
    v(j) = sign * r;
    out.push_back(ket_projector(v));
  }
  return out;
}

/// p |Psi-><Psi-| + (1 - p) I / 4
inline Mat werner(double p) { return p * bell_states()[3] + (1 - p) * Mat::Identity(4, 4) / 4.0; }

}  // namespace oracle
