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

#include "ness/spectrum.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ness/errors.hpp"

namespace ness {
namespace {

constexpr int bit_of(int spin) { return 3 - spin; }

int occupation(int state, int spin) { return (state >> bit_of(spin)) & 1; }

Vec8 basis_ket(int n1, int n2, int n3) {
  Vec8 v = Vec8::Zero();
  v(4 * n1 + 2 * n2 + n3) = 1.0;
  return v;
}

}  // namespace

void ChainParams::validate() const {
  if (!std::isfinite(J) || !std::isfinite(h) || !std::isfinite(k)) {
    std::ostringstream os;
    os << "non-finite chain parameter (J=" << J << ", h=" << h << ", k=" << k << ")";
    throw InvalidParameter(os.str());
  }
  if (J <= 0.0) throw InvalidParameter("exchange coupling J must be positive");
}

MixingAngles mixing_angles(double k, double J) {
  MixingAngles a;
  const double c = 2.0 * std::sqrt(2.0) * J;  // 2 sqrt(2) J
  a.B = std::sqrt(c * c + k * k);
  const double n1 = std::sqrt(c * c + (k - a.B) * (k - a.B));
  const double n2 = std::sqrt(c * c + (k + a.B) * (k + a.B));
  a.sin_a1 = c / n1;
  a.cos_a1 = (k - a.B) / n1;
  a.sin_a2 = c / n2;
  a.cos_a2 = (k + a.B) / n2;
  return a;
}

Mat8 spin_flip(int spin) {
  if (spin < 1 || spin > 3) throw InvalidParameter("spin index must be 1, 2 or 3");
  Mat8 x = Mat8::Zero();
  for (int s = 0; s < kChainDim; ++s) x(s ^ (1 << bit_of(spin)), s) = 1.0;
  return x;
}

Mat8 build_hamiltonian(const ChainParams& p) {
  p.validate();
  Mat8 H = Mat8::Zero();
  for (int s = 0; s < kChainDim; ++s) {
    double z = 0.0;
    for (int spin = 1; spin <= 3; ++spin) z += 2 * occupation(s, spin) - 1;
    H(s, s) += p.h * z;

    // XX + YY = 2 (S+ S- + S- S+): hops an excitation between neighbours.
    for (int i = 1; i <= 2; ++i) {
      if (occupation(s, i) != occupation(s, i + 1)) {
        const int t = s ^ (1 << bit_of(i)) ^ (1 << bit_of(i + 1));
        H(t, s) += 2.0 * p.J;
      }
    }
    // Three-spin term: end-to-end hop weighted by Z of the middle spin.
    if (occupation(s, 1) != occupation(s, 3)) {
      const int t = s ^ (1 << bit_of(1)) ^ (1 << bit_of(3));
      H(t, s) += 2.0 * p.k * (2 * occupation(s, 2) - 1);
    }
  }
  return H;
}

Spectrum analytic_eigensystem(const ChainParams& p) {
  p.validate();
  Spectrum sp;
  sp.params = p;
  sp.angles = mixing_angles(p.k, p.J);
  const auto& a = sp.angles;
  const double h = p.h;
  const double k = p.k;
  const double r = 1.0 / std::sqrt(2.0);

  sp.energies = {-3 * h,          3 * h,           h - 2 * k,       -h + 2 * k,
                 -h - k - a.B,    h + k - a.B,     -h - k + a.B,    h + k + a.B};

  sp.states[0] = basis_ket(0, 0, 0);
  sp.states[1] = basis_ket(1, 1, 1);
  sp.states[2] = r * (-basis_ket(1, 1, 0) + basis_ket(0, 1, 1));
  sp.states[3] = r * (-basis_ket(1, 0, 0) + basis_ket(0, 0, 1));
  sp.states[4] = r * a.sin_a1 * basis_ket(1, 0, 0) + a.cos_a1 * basis_ket(0, 1, 0) +
                 r * a.sin_a1 * basis_ket(0, 0, 1);
  sp.states[5] = r * a.sin_a2 * basis_ket(1, 1, 0) - a.cos_a2 * basis_ket(1, 0, 1) +
                 r * a.sin_a2 * basis_ket(0, 1, 1);
  sp.states[6] = r * a.sin_a2 * basis_ket(1, 0, 0) + a.cos_a2 * basis_ket(0, 1, 0) +
                 r * a.sin_a2 * basis_ket(0, 0, 1);
  sp.states[7] = r * a.sin_a1 * basis_ket(1, 1, 0) - a.cos_a1 * basis_ket(1, 0, 1) +
                 r * a.sin_a1 * basis_ket(0, 1, 1);
  return sp;
}

NumericSpectrum numeric_eigensystem(const Eigen::MatrixXcd& H) {
  if (H.rows() != H.cols()) throw ContractViolation("matrix is not square");
  const double dev = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (!(dev <= 1e-12)) {
    std::ostringstream os;
    os << "matrix is not Hermitian (max |H - H^dag| = " << dev << ")";
    throw ContractViolation(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success) throw ContractViolation("Hermitian eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

TransitionFrequencies transition_frequencies(const ChainParams& p) {
  const double B = mixing_angles(p.k, p.J).B;
  return {2 * p.h - p.k - B, 2 * p.h - p.k + B, 2 * (p.h + p.k)};
}

double energy_gap_35(const ChainParams& p) {
  return 2 * p.h + mixing_angles(p.k, p.J).B - p.k;
}

}  // namespace ness
