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

#include "ness/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "ness/density.hpp"
#include "ness/errors.hpp"

namespace ness {
namespace {

constexpr double kAmplitudeFloor = 1e-13;
constexpr double kNullTolerance = 1e-9;

Mat8 ketbra(const Vec8& a, const Vec8& b) { return a * b.adjoint(); }

SuperOp kron(const Mat8& a, const Mat8& b) {
  SuperOp out(64, 64);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) out.block<8, 8>(8 * i, 8 * j) = a(i, j) * b;
  return out;
}

struct RawEntry {
  double omega;
  Mat8 A;
  std::string label;
};

// Sort by frequency and sum operators whose frequencies agree within
// kMergeTolerance of the first member of their group.
std::vector<JumpOperator> merge(std::vector<RawEntry> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const RawEntry& a, const RawEntry& b) { return a.omega < b.omega; });
  std::vector<JumpOperator> out;
  double group_start = 0.0;
  for (const auto& e : raw) {
    if (!out.empty() && e.omega - group_start <= kMergeTolerance) {
      out.back().A += e.A;
    } else {
      out.push_back({e.omega, e.A, Mat8::Zero()});
      group_start = e.omega;
    }
  }
  for (auto& j : out) j.A_dag = j.A.adjoint();
  return out;
}

[[noreturn]] void throw_degenerate(const std::string& label, double omega) {
  std::ostringstream os;
  os << "near-degenerate Bohr frequency " << omega << " for " << label
     << " (|omega| < " << kMinFrequency << "); secular approximation invalid";
  throw NearDegenerateFrequency(os.str());
}

std::vector<RawEntry> generic_entries(const Spectrum& sp, int spin) {
  const Mat8 x = spin_flip(spin);
  std::vector<RawEntry> raw;
  for (int lo = 1; lo <= kLevels; ++lo) {
    for (int hi = 1; hi <= kLevels; ++hi) {
      if (lo == hi) continue;
      const cplx amp = (sp.phi(lo).adjoint() * x * sp.phi(hi))(0, 0);
      if (std::abs(amp) < kAmplitudeFloor) continue;
      const double omega = sp.epsilon(hi) - sp.epsilon(lo);
      if (std::abs(omega) < kMinFrequency) {
        std::ostringstream os;
        os << "levels (" << lo << ", " << hi << ")";
        throw_degenerate(os.str(), omega);
      }
      // The reversed pair supplies the adjoint; keep only lowering terms.
      if (omega > 0.0) {
        std::ostringstream os;
        os << "levels (" << lo << ", " << hi << ")";
        raw.push_back({omega, amp * ketbra(sp.phi(lo), sp.phi(hi)), os.str()});
      }
    }
  }
  return raw;
}

// Raising forms A_j^dag(omega_i), i = 1..3, as closed expressions in the
// eigenbasis. Each connects pairs whose energy difference is the signed
// omega_i.
std::array<Mat8, 3> raising_forms(const Spectrum& sp, int spin) {
  const auto& a = sp.angles;
  const double r = 1.0 / std::sqrt(2.0);
  auto kb = [&](int l, int m) { return ketbra(sp.phi(l), sp.phi(m)); };
  // Spin 3 is the mirror image of spin 1; phi_3 and phi_4 are odd under
  // the reflection, so couplings through them flip sign.
  const double s = spin == 1 ? 1.0 : -1.0;
  std::array<Mat8, 3> f;
  f[0] = r * (a.sin_a1 * kb(2, 8) - s * a.cos_a2 * kb(6, 4) - s * a.cos_a2 * kb(3, 7) +
              a.sin_a1 * kb(5, 1));
  f[1] = r * (a.sin_a2 * kb(2, 6) - s * a.cos_a1 * kb(8, 4) - s * a.cos_a1 * kb(3, 5) +
              a.sin_a2 * kb(7, 1));
  f[2] = s * r * (kb(2, 3) - s * a.sin_diff() * kb(6, 5) + s * a.sin_diff() * kb(8, 7) -
                  kb(4, 1));
  return f;
}

std::vector<RawEntry> analytic_entries(const Spectrum& sp, int spin) {
  const auto w = transition_frequencies(sp.params);
  const std::array<double, 3> omegas{w.omega1, w.omega2, w.omega3};
  const auto forms = raising_forms(sp, spin);
  std::vector<RawEntry> raw;
  for (int i = 0; i < 3; ++i) {
    std::ostringstream os;
    os << "omega_" << (i + 1) << " of spin " << spin;
    if (std::abs(omegas[i]) < kMinFrequency) throw_degenerate(os.str(), omegas[i]);
    if (omegas[i] > 0.0)
      raw.push_back({omegas[i], forms[i].adjoint(), os.str()});
    else
      raw.push_back({-omegas[i], forms[i], os.str()});
  }
  return raw;
}

}  // namespace

BathSpec BathSpec::from_mean(double t_mean, double delta_t, double gamma) {
  return from_temperatures(t_mean + 0.5 * delta_t, t_mean - 0.5 * delta_t, gamma);
}

BathSpec BathSpec::from_temperatures(double t1, double t3, double gamma) {
  BathSpec b;
  b.t1 = t1;
  b.t3 = t3;
  b.gamma1 = gamma;
  b.gamma3 = gamma;
  b.validate();
  return b;
}

void BathSpec::validate() const {
  auto check_t = [&](double t, const char* name) {
    const bool ok = std::isfinite(t) && (t > 0.0 || (zero_temperature && t == 0.0));
    if (!ok) {
      std::ostringstream os;
      os << name << " = " << t << " must be positive";
      throw InvalidParameter(os.str());
    }
  };
  check_t(t1, "T1");
  check_t(t3, "T3");
  if (!(gamma1 >= 0.0) || !(gamma3 >= 0.0) || !std::isfinite(gamma1) || !std::isfinite(gamma3))
    throw InvalidParameter("decay rates must be non-negative and finite");
}

double planck_occupation(double omega, double T, bool zero_temperature) {
  if (!(omega > kMinFrequency)) throw_degenerate("planck occupation", omega);
  if (zero_temperature && T == 0.0) return 0.0;
  if (!(T > 0.0)) throw InvalidParameter("temperature must be positive");
  return 1.0 / std::expm1(omega / T);
}

JumpOperatorSet build_jump_operators(const Spectrum& spec, JumpMode mode, double warn_below) {
  JumpOperatorSet set;
  if (mode == JumpMode::analytic &&
      std::abs(spec.params.k - spec.params.J) < 1e-6) {
    throw NearDegenerateFrequency(
        "omega_2 and omega_3 coincide at k = J; the closed forms keep them separate, "
        "use generic mode");
  }
  for (int spin : {1, 3}) {
    auto raw = mode == JumpMode::generic ? generic_entries(spec, spin)
                                         : analytic_entries(spec, spin);
    auto merged = merge(std::move(raw));
    for (const auto& j : merged) {
      if (j.omega < warn_below) {
        std::ostringstream os;
        os << "bath " << spin << ": frequency " << j.omega << " below " << warn_below;
        set.warnings.push_back(os.str());
      }
    }
    (spin == 1 ? set.bath1 : set.bath3) = std::move(merged);
  }
  return set;
}

Mat8 dissipator(const Mat8& rho, Bath j, const JumpOperatorSet& ops, const BathSpec& bath) {
  Mat8 out = Mat8::Zero();
  const double gamma = bath.gamma(j);
  const double T = bath.temperature(j);
  for (const auto& op : ops.of(j)) {
    const double n = planck_occupation(op.omega, T, bath.zero_temperature);
    const Mat8 AdA = op.A_dag * op.A;
    const Mat8 AAd = op.A * op.A_dag;
    out += gamma * (1.0 + n) * (2.0 * op.A * rho * op.A_dag - (rho * AdA + AdA * rho));
    out += gamma * n * (2.0 * op.A_dag * rho * op.A - (rho * AAd + AAd * rho));
  }
  return out;
}

Mat8 liouvillian_apply(const Mat8& rho, const ChainParams& p, const BathSpec& bath,
                       const JumpOperatorSet& ops) {
  const Mat8 H = build_hamiltonian(p);
  const cplx i(0.0, 1.0);
  return -i * (H * rho - rho * H) + dissipator(rho, Bath::spin1, ops, bath) +
         dissipator(rho, Bath::spin3, ops, bath);
}

namespace {

// vec(X rho Y) = (Y^T kron X) vec(rho)
SuperOp unitary_part(const Mat8& H) {
  const Mat8 I = Mat8::Identity();
  return -cplx(0.0, 1.0) * (kron(I, H) - kron(H.transpose(), I));
}

}  // namespace

SuperOp liouvillian_matrix(const ChainParams& p, const BathSpec& bath,
                           const JumpOperatorSet& ops) {
  const Mat8 I = Mat8::Identity();
  SuperOp M = unitary_part(build_hamiltonian(p));
  for (Bath j : {Bath::spin1, Bath::spin3}) {
    const double gamma = bath.gamma(j);
    for (const auto& op : ops.of(j)) {
      const double n = planck_occupation(op.omega, bath.temperature(j), bath.zero_temperature);
      const Mat8 AdA = op.A_dag * op.A;
      const Mat8 AAd = op.A * op.A_dag;
      M += gamma * (1.0 + n) *
           (2.0 * kron(op.A.conjugate(), op.A) - kron(I, AdA) - kron(AdA.transpose(), I));
      M += gamma * n *
           (2.0 * kron(op.A.transpose(), op.A_dag) - kron(I, AAd) - kron(AAd.transpose(), I));
    }
  }
  return M;
}

Eigen::VectorXcd liouvillian_eigenvalues(const SuperOp& M) {
  Eigen::ComplexEigenSolver<SuperOp> es(M, false);
  return es.eigenvalues();
}

double spectral_radius(const SuperOp& M) {
  return liouvillian_eigenvalues(M).cwiseAbs().maxCoeff();
}

GeneratorScales generator_scales(const SuperOp& M) {
  const Eigen::VectorXcd lambda = liouvillian_eigenvalues(M);
  GeneratorScales g;
  g.slowest_decay = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double mag = std::abs(lambda(i));
    g.spectral_radius = std::max(g.spectral_radius, mag);
    if (mag >= kNullTolerance) g.slowest_decay = std::min(g.slowest_decay, std::abs(lambda(i).real()));
  }
  return g;
}

double default_time_step(double radius, Frame frame) {
  if (frame == Frame::interaction) return 0.05 / std::max(radius, 1e-12);
  return 0.01 / std::max(1.0, radius);
}

const SuperOp& generator(const MasterEquation& eq, Frame frame) {
  return frame == Frame::schrodinger ? eq.matrix() : eq.dissipative_matrix();
}

SuperVec vectorize(const Mat8& rho) {
  return Eigen::Map<const SuperVec>(rho.data(), 64);
}

Mat8 unvectorize(const SuperVec& v) { return Eigen::Map<const Mat8>(v.data()); }

MasterEquation::MasterEquation(const ChainParams& p, const BathSpec& bath, JumpMode mode)
    : params_(p), bath_(bath) {
  params_.validate();
  bath_.validate();
  spectrum_ = analytic_eigensystem(params_);
  jumps_ = build_jump_operators(spectrum_, mode, 10.0 * bath_.min_gamma());
  hamiltonian_ = build_hamiltonian(params_);

  Mat8 K = Mat8::Zero();
  for (Bath j : {Bath::spin1, Bath::spin3}) {
    const double gamma = bath_.gamma(j);
    for (const auto& op : jumps_.of(j)) {
      const double n = planck_occupation(op.omega, bath_.temperature(j), bath_.zero_temperature);
      const double down = gamma * (1.0 + n);
      const double up = gamma * n;
      K += down * op.A_dag * op.A + up * op.A * op.A_dag;
      channels_.emplace_back(2.0 * down, op.A);
      if (up > 0.0) channels_.emplace_back(2.0 * up, op.A_dag);
    }
  }
  drift_ = -cplx(0.0, 1.0) * hamiltonian_ - K;
  matrix_ = liouvillian_matrix(params_, bath_, jumps_);
  dissipative_ = matrix_ - unitary_part(hamiltonian_);
}

Mat8 MasterEquation::apply(const Mat8& rho) const {
  Mat8 out = drift_ * rho;
  out += rho * drift_.adjoint();
  for (const auto& [c, L] : channels_) out.noalias() += c * (L * rho * L.adjoint());
  return out;
}

namespace {

void normalize_in_place(SuperVec& v) {
  Mat8 rho = unvectorize(v);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  v = vectorize(rho);
}

void rk4_step(const SuperOp& M, SuperVec& v, double dt, SuperVec& k1, SuperVec& k2,
              SuperVec& k3, SuperVec& k4) {
  k1.noalias() = M * v;
  k2.noalias() = M * (v + 0.5 * dt * k1);
  k3.noalias() = M * (v + 0.5 * dt * k2);
  k4.noalias() = M * (v + dt * k3);
  v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  normalize_in_place(v);
}

void check_positivity(const Mat8& rho, double t) {
  const double lo = min_eigenvalue(rho);
  if (lo < -kInvalidEigenvalue) {
    std::ostringstream os;
    os << "positivity lost at t = " << t << " (min eigenvalue " << lo << ")";
    throw IntegrationFailure(os.str());
  }
}

}  // namespace

namespace {

// exp(-i H t) rho exp(i H t) through the eigen-decomposition of H.
class UnitaryPhases {
 public:
  explicit UnitaryPhases(const Spectrum& sp) {
    for (int l = 0; l < kLevels; ++l) {
      V_.col(l) = sp.states[l];
      energies_[l] = sp.energies[l];
    }
  }
  Mat8 to_schrodinger(const Mat8& rho_interaction, double t) const {
    Mat8 r = V_.adjoint() * rho_interaction * V_;
    for (int a = 0; a < kLevels; ++a)
      for (int b = 0; b < kLevels; ++b) r(a, b) *= std::polar(1.0, -(energies_[a] - energies_[b]) * t);
    return V_ * r * V_.adjoint();
  }

 private:
  Mat8 V_;
  std::array<double, kLevels> energies_{};
};

}  // namespace

Trajectory evolve_rk4(const MasterEquation& eq, const Mat8& rho0, const EvolveOptions& opts) {
  if (!(opts.dt > 0.0)) throw InvalidParameter("dt must be positive");
  if (opts.steps < 0 || opts.sample_every < 1)
    throw InvalidParameter("steps must be >= 0 and sample_every >= 1");
  if (!is_density_matrix(rho0, 1e-10)) throw InvalidState("initial state is not a density matrix");

  const SuperOp& M = generator(eq, opts.frame);
  const double radius = opts.spectral_radius ? *opts.spectral_radius : spectral_radius(M);
  if (opts.dt * radius >= kStabilityLimit) {
    const double suggested = default_time_step(radius, opts.frame);
    std::ostringstream os;
    os << "dt = " << opts.dt << " violates dt*|lambda_max| < " << kStabilityLimit
       << " (|lambda_max| = " << radius << "); try dt = " << suggested;
    throw StepSizeError(os.str(), suggested);
  }

  const UnitaryPhases phases(eq.spectrum());
  SuperVec v = vectorize(rho0);
  SuperVec k1(64), k2(64), k3(64), k4(64);
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);
  for (long s = 1; s <= opts.steps; ++s) {
    rk4_step(M, v, opts.dt, k1, k2, k3, k4);
    if (s % opts.sample_every == 0) {
      const double t = s * opts.dt;
      Mat8 rho = unvectorize(v);
      if (opts.frame == Frame::interaction) rho = phases.to_schrodinger(rho, t);
      check_positivity(rho, t);
      traj.times.push_back(t);
      traj.states.push_back(rho);
    }
  }
  return traj;
}

namespace {

SteadyState nullspace_steady_state(const MasterEquation& eq) {
  const SuperOp& M = eq.matrix();
  Eigen::ComplexEigenSolver<SuperOp> es(M, true);
  if (es.info() != Eigen::Success) throw ConvergenceError("generator eigensolver failed", -1.0);
  const Eigen::VectorXcd& lambda = es.eigenvalues();

  Eigen::Index best = 0;
  int null_count = 0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) < std::abs(lambda(best))) best = i;
    if (std::abs(lambda(i)) < kNullTolerance) ++null_count;
  }
  if (null_count > 1) {
    std::ostringstream os;
    os << "steady state is not unique: " << null_count << " generator eigenvalues below "
       << kNullTolerance;
    throw NonUniqueSteadyState(os.str());
  }

  SuperVec v = es.eigenvectors().col(best);
  v /= unvectorize(v).trace();

  // Polish with the trace-constrained linear system: row 0 of M replaced by
  // the trace functional.
  SuperOp A = M;
  A.row(0).setZero();
  for (int d = 0; d < 8; ++d) A(0, d + 8 * d) = 1.0;
  SuperVec b = SuperVec::Zero(64);
  b(0) = 1.0;
  Eigen::PartialPivLU<SuperOp> lu(A);
  for (int it = 0; it < 2; ++it) v += lu.solve(b - A * v);

  const Mat8 rho = project_to_state(unvectorize(v));
  return {rho, eq.apply(rho).norm(), 0.0};
}

SteadyState rk4_steady_state(const MasterEquation& eq, const SteadyStateOptions& opts) {
  const SuperOp& M = generator(eq, opts.frame);
  const GeneratorScales scales = generator_scales(M);
  const double dt = opts.dt ? *opts.dt : default_time_step(scales.spectral_radius, opts.frame);
  const double t_max = opts.t_max ? *opts.t_max
                                  : std::max(50.0 / std::max(eq.bath().gamma1, eq.bath().gamma3),
                                             50.0 / std::max(scales.slowest_decay, 1e-300));
  if (dt * scales.spectral_radius >= kStabilityLimit) {
    throw StepSizeError("steady-state rk4 step violates the stability guard",
                        default_time_step(scales.spectral_radius, opts.frame));
  }
  const Mat8 rho0 = opts.initial ? *opts.initial : Mat8(Mat8::Identity() / 8.0);
  if (!is_density_matrix(rho0, 1e-10)) throw InvalidState("initial state is not a density matrix");

  constexpr long kCheckEvery = 64;
  SuperVec v = vectorize(rho0);
  SuperVec k1(64), k2(64), k3(64), k4(64);
  const long max_steps = static_cast<long>(std::ceil(t_max / dt));
  double residual = (M * v).norm();
  for (long s = 1; s <= max_steps; ++s) {
    rk4_step(M, v, dt, k1, k2, k3, k4);
    if (s % kCheckEvery == 0 || s == max_steps) {
      residual = (M * v).norm();
      if (residual < opts.rk4_tolerance) {
        // A stationary state commutes with H, so no phase correction is needed.
        const Mat8 rho = project_to_state(unvectorize(v));
        return {rho, eq.apply(rho).norm(), s * dt};
      }
    }
  }
  std::ostringstream os;
  os << "rk4 did not reach ||d rho/dt|| < " << opts.rk4_tolerance << " by t = " << t_max
     << " (residual " << residual << ")";
  throw ConvergenceError(os.str(), residual);
}

}  // namespace

SteadyState steady_state(const MasterEquation& eq, SteadyStateMethod method,
                         const SteadyStateOptions& opts) {
  if (eq.bath().gamma1 == 0.0 && eq.bath().gamma3 == 0.0)
    throw NonUniqueSteadyState("both baths are decoupled; every eigenstate is stationary");
  return method == SteadyStateMethod::nullspace ? nullspace_steady_state(eq)
                                                : rk4_steady_state(eq, opts);
}

SteadyState steady_state(const ChainParams& p, const BathSpec& bath, SteadyStateMethod method) {
  return steady_state(MasterEquation(p, bath), method);
}

std::array<double, kLevels> occupation_probabilities(const Mat8& rho, const Spectrum& spec) {
  std::array<double, kLevels> P{};
  for (int l = 1; l <= kLevels; ++l)
    P[l - 1] = std::max(0.0, (spec.phi(l).adjoint() * rho * spec.phi(l))(0, 0).real());
  return P;
}

}  // namespace ness
