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
#include <optional>
#include <string>
#include <vector>

#include "ness/spectrum.hpp"
#include "ness/types.hpp"

namespace ness {

enum class Bath { spin1 = 1, spin3 = 3 };

/// Two thermal baths attached to the end spins (k_B = 1, units of J).
struct BathSpec {
  double t1 = 1.0;
  double t3 = 1.0;
  double gamma1 = 0.01;
  double gamma3 = 0.01;
  /// Permits T = 0 on either bath, in which case n(omega) = 0.
  bool zero_temperature = false;

  /// T1 = T_M + dT/2, T3 = T_M - dT/2.
  static BathSpec from_mean(double t_mean, double delta_t, double gamma);
  static BathSpec from_temperatures(double t1, double t3, double gamma);

  double temperature(Bath b) const noexcept { return b == Bath::spin1 ? t1 : t3; }
  double gamma(Bath b) const noexcept { return b == Bath::spin1 ? gamma1 : gamma3; }
  double min_gamma() const noexcept { return gamma1 < gamma3 ? gamma1 : gamma3; }

  /// Throws InvalidParameter on non-positive temperatures or negative rates.
  /// A zero rate is accepted (unitary dynamics) but has no steady state.
  void validate() const;
};

inline constexpr double kMinFrequency = 1e-9;
inline constexpr double kMergeTolerance = 1e-9;

/// 1 / (exp(omega / T) - 1); 0 when zero_temperature is set.
/// Throws NearDegenerateFrequency for omega <= kMinFrequency.
double planck_occupation(double omega, double T, bool zero_temperature = false);

/// Lowering eigenoperator of X_j at Bohr frequency omega > 0, in the
/// computational basis.
struct JumpOperator {
  double omega = 0.0;
  Mat8 A;
  Mat8 A_dag;
};

struct JumpOperatorSet {
  std::vector<JumpOperator> bath1;
  std::vector<JumpOperator> bath3;
  /// Frequencies that are positive but small compared with the rate.
  std::vector<std::string> warnings;

  const std::vector<JumpOperator>& of(Bath b) const {
    return b == Bath::spin1 ? bath1 : bath3;
  }
};

/// analytic: closed-form operators per frequency omega_1..omega_3.
/// generic: bucket every eigenpair difference of the supplied spectrum.
enum class JumpMode { analytic, generic };

/// Both modes canonicalize negative frequencies to (-omega, A^dag), reject
/// |omega| < kMinFrequency and merge frequencies closer than kMergeTolerance.
/// Entries below warn_below are kept and reported in `warnings`.
JumpOperatorSet build_jump_operators(const Spectrum& spec, JumpMode mode,
                                     double warn_below = 0.0);

/// L_j(rho) evaluated term by term.
Mat8 dissipator(const Mat8& rho, Bath j, const JumpOperatorSet& ops, const BathSpec& bath);

/// -i[H, rho] + L_1(rho) + L_3(rho) evaluated term by term.
Mat8 liouvillian_apply(const Mat8& rho, const ChainParams& p, const BathSpec& bath,
                       const JumpOperatorSet& ops);

/// 64x64 generator with vec(d rho / dt) = M vec(rho), column-major vec.
SuperOp liouvillian_matrix(const ChainParams& p, const BathSpec& bath,
                           const JumpOperatorSet& ops);

Eigen::VectorXcd liouvillian_eigenvalues(const SuperOp& M);

SuperVec vectorize(const Mat8& rho);
Mat8 unvectorize(const SuperVec& v);

/// Secular master equation for one parameter point. Immutable after
/// construction and safe to share between threads.
class MasterEquation {
 public:
  MasterEquation(const ChainParams& p, const BathSpec& bath,
                 JumpMode mode = JumpMode::generic);

  const ChainParams& params() const noexcept { return params_; }
  const BathSpec& bath() const noexcept { return bath_; }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  const JumpOperatorSet& jumps() const noexcept { return jumps_; }
  const Mat8& hamiltonian() const noexcept { return hamiltonian_; }
  const SuperOp& matrix() const noexcept { return matrix_; }
  /// Dissipative part L_1 + L_3 alone. It commutes with the unitary part,
  /// so it generates the dynamics in the frame rotating with H.
  const SuperOp& dissipative_matrix() const noexcept { return dissipative_; }

  /// Same generator as liouvillian_apply, using precombined rates.
  Mat8 apply(const Mat8& rho) const;

 private:
  ChainParams params_;
  BathSpec bath_;
  Spectrum spectrum_;
  JumpOperatorSet jumps_;
  Mat8 hamiltonian_;
  // d rho/dt = G rho + rho G^dag + sum_m c_m L_m rho L_m^dag
  Mat8 drift_;
  std::vector<std::pair<double, Mat8>> channels_;
  SuperOp matrix_;
  SuperOp dissipative_;
};

/// Picture in which RK4 advances the state. `interaction` integrates only
/// the dissipator and restores the unitary phases exactly; samples are
/// always returned in the Schrodinger picture.
enum class Frame { schrodinger, interaction };

/// Generator integrated in the given frame.
const SuperOp& generator(const MasterEquation& eq, Frame frame);

/// Extremes of the generator spectrum.
struct GeneratorScales {
  double spectral_radius = 0.0;
  /// Smallest |Re lambda| among eigenvalues with |lambda| >= 1e-9.
  double slowest_decay = 0.0;
};
GeneratorScales generator_scales(const SuperOp& M);

struct Trajectory {
  std::vector<double> times;
  std::vector<Mat8> states;
};

struct EvolveOptions {
  double dt = 0.0;
  long steps = 0;
  long sample_every = 1;
  Frame frame = Frame::schrodinger;
  /// Largest |eigenvalue| of the generator; computed when absent.
  std::optional<double> spectral_radius;
};

/// Largest dt * |lambda_max| accepted by evolve_rk4.
inline constexpr double kStabilityLimit = 0.1;

/// Classic RK4 with re-Hermitization and trace renormalization after every
/// step. Samples at t = 0 and every `sample_every` steps.
/// Throws StepSizeError when dt * |lambda_max| >= kStabilityLimit and
/// IntegrationFailure when a sample has an eigenvalue below -1e-6.
Trajectory evolve_rk4(const MasterEquation& eq, const Mat8& rho0, const EvolveOptions& opts);

/// schrodinger: dt = 0.01 / max(1, |lambda_max|)
/// interaction: dt = 0.05 / |lambda_max| (the generator is purely dissipative
/// and slow, so the unit floor would waste steps)
double default_time_step(double spectral_radius, Frame frame = Frame::schrodinger);
double spectral_radius(const SuperOp& M);

enum class SteadyStateMethod { nullspace, rk4 };

struct SteadyStateOptions {
  /// rk4: stop once ||d rho/dt||_F drops below this.
  double rk4_tolerance = 1e-12;
  /// rk4: defaults to max(50 / gamma, 50 / slowest decay rate), gamma the larger rate.
  std::optional<double> t_max;
  Frame frame = Frame::interaction;
  /// rk4: defaults to default_time_step().
  std::optional<double> dt;
  /// rk4: defaults to I/8.
  std::optional<Mat8> initial;
};

struct SteadyState {
  Mat8 rho;
  /// || L(rho) ||_F
  double residual = 0.0;
  /// Integration time used by the rk4 method; 0 for nullspace.
  double time = 0.0;
};

/// Throws NonUniqueSteadyState when more than one generator eigenvalue has
/// modulus below 1e-9, ConvergenceError when rk4 hits t_max.
SteadyState steady_state(const MasterEquation& eq, SteadyStateMethod method,
                         const SteadyStateOptions& opts = {});
SteadyState steady_state(const ChainParams& p, const BathSpec& bath, SteadyStateMethod method);

/// P_l = <phi_l| rho |phi_l>, label order.
std::array<double, kLevels> occupation_probabilities(const Mat8& rho, const Spectrum& spec);

}  // namespace ness
