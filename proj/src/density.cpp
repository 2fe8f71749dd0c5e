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

#include "ness/density.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ness/errors.hpp"

namespace ness {

Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& rho) {
  return 0.5 * (rho + rho.adjoint());
}

double min_eigenvalue(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitize(rho), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Eigen::VectorXd clamped_spectrum(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitize(rho), Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -kInvalidEigenvalue) {
      std::ostringstream os;
      os << "state has eigenvalue " << ev(i) << " below -" << kInvalidEigenvalue;
      throw InvalidState(os.str());
    }
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  return ev;
}

Eigen::MatrixXcd project_to_state(const Eigen::MatrixXcd& rho) {
  Eigen::MatrixXcd h = hermitize(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -kInvalidEigenvalue) {
    std::ostringstream os;
    os << "state has eigenvalue " << ev.minCoeff() << " below -" << kInvalidEigenvalue;
    throw InvalidState(os.str());
  }
  if (ev.minCoeff() < 0.0) {
    ev = ev.cwiseMax(0.0);
    h = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    h = hermitize(h);
  }
  return h / h.trace().real();
}

bool is_density_matrix(const Eigen::MatrixXcd& rho, double tol) {
  if (rho.rows() != rho.cols()) return false;
  if ((rho - rho.adjoint()).norm() > tol) return false;
  if (std::abs(rho.trace() - cplx(1.0)) > tol) return false;
  return min_eigenvalue(rho) >= -kClampTolerance;
}

double trace_distance(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitize(rho - sigma),
                                                     Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double pure_fidelity(const Eigen::MatrixXcd& rho, const Eigen::VectorXcd& psi) {
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

Eigen::MatrixXcd gibbs_state(const Eigen::MatrixXcd& H, double T) {
  if (!(T > 0.0)) throw InvalidParameter("Gibbs state needs a positive temperature");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  const Eigen::VectorXd& e = es.eigenvalues();
  // Shift by the ground energy so the weights cannot overflow.
  Eigen::VectorXd w = (-(e.array() - e.minCoeff()) / T).exp();
  w /= w.sum();
  return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd projector(const Eigen::VectorXcd& psi) { return psi * psi.adjoint(); }

}  // namespace ness
