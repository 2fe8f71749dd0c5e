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

#include "ness/cli.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ness/correlations.hpp"
#include "ness/density.hpp"
#include "ness/errors.hpp"
#include "ness/lindblad.hpp"
#include "ness/spectrum.hpp"
#include "ness/sweep.hpp"

namespace ness {
namespace {

using nlohmann::json;

struct ChainOptions {
  double h = 0.0;
  double k = 0.0;
  double J = 1.0;
};

struct BathOptions {
  std::optional<double> t_mean;
  std::optional<double> delta_t;
  std::optional<double> t1;
  std::optional<double> t3;
  double gamma = 0.01;

  BathSpec resolve() const {
    const bool mean_form = t_mean || delta_t;
    const bool raw_form = t1 || t3;
    if (mean_form == raw_form)
      throw InvalidParameter("give exactly one of --t-mean/--delta-t or --t1/--t3");
    if (mean_form) {
      if (!t_mean || !delta_t) throw InvalidParameter("--t-mean and --delta-t go together");
      return BathSpec::from_mean(*t_mean, *delta_t, gamma);
    }
    if (!t1 || !t3) throw InvalidParameter("--t1 and --t3 go together");
    return BathSpec::from_temperatures(*t1, *t3, gamma);
  }
};

struct RangeOptions {
  std::optional<double> min;
  std::optional<double> max;
  std::optional<int> steps;

  bool active() const { return min || max || steps; }
  std::vector<double> values(const char* name) const {
    if (!min || !max || !steps)
      throw InvalidParameter(std::string("--") + name + "-min, --" + name + "-max and --" + name +
                             "-steps go together");
    try {
      return grid_values(*min, *max, *steps);
    } catch (const ConfigError& e) {
      throw InvalidParameter(e.what());
    }
  }
};

void add_chain(CLI::App* cmd, ChainOptions& c, bool require_hk) {
  auto* h = cmd->add_option("--h", c.h, "Uniform magnetic field");
  auto* k = cmd->add_option("--k", c.k, "Three-spin coupling");
  if (require_hk) {
    h->required();
    k->required();
  }
  cmd->add_option("--J", c.J, "XX coupling")->capture_default_str();
}

void add_bath(CLI::App* cmd, BathOptions& b) {
  cmd->add_option("--t-mean", b.t_mean, "Mean bath temperature");
  cmd->add_option("--delta-t", b.delta_t, "T1 - T3");
  cmd->add_option("--t1", b.t1, "Temperature of the bath on spin 1");
  cmd->add_option("--t3", b.t3, "Temperature of the bath on spin 3");
  cmd->add_option("--gamma", b.gamma, "System-bath coupling")->capture_default_str();
}

void add_range(CLI::App* cmd, RangeOptions& r, const std::string& name) {
  cmd->add_option("--" + name + "-min", r.min);
  cmd->add_option("--" + name + "-max", r.max);
  cmd->add_option("--" + name + "-steps", r.steps)->check(CLI::PositiveNumber);
}

SteadyStateMethod to_method(const std::string& s) {
  return s == "rk4" ? SteadyStateMethod::rk4 : SteadyStateMethod::nullspace;
}
JumpMode to_jump_mode(const std::string& s) {
  return s == "analytic" ? JumpMode::analytic : JumpMode::generic;
}
MeasuredSide to_side(const std::string& s) { return s == "A" ? MeasuredSide::A : MeasuredSide::B; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", output_precision(), v);
  return buf;
}

json correlation_json(const CorrelationRecord& r) {
  return {{"discord", r.discord},
          {"classical_correlation", r.classical_correlation},
          {"mutual_information", r.mutual_information},
          {"concurrence", r.concurrence},
          {"theta", r.optimum.theta},
          {"phi", r.optimum.phi}};
}

json spectrum_json(const ChainParams& p) {
  const Spectrum s = analytic_eigensystem(p);
  const auto w = transition_frequencies(p);
  const auto& a = s.angles;
  json j = {{"h", p.h},
            {"k", p.k},
            {"J", p.J},
            {"B", a.B},
            {"alpha_1", std::atan2(a.sin_a1, a.cos_a1)},
            {"alpha_2", std::atan2(a.sin_a2, a.cos_a2)},
            {"sin_alpha_1", a.sin_a1},
            {"cos_alpha_1", a.cos_a1},
            {"sin_alpha_2", a.sin_a2},
            {"cos_alpha_2", a.cos_a2},
            {"omega_1", w.omega1},
            {"omega_2", w.omega2},
            {"omega_3", w.omega3},
            {"gap_35", energy_gap_35(p)}};
  for (int l = 1; l <= kLevels; ++l) j["epsilon_" + std::to_string(l)] = s.epsilon(l);
  return j;
}

/// 16 real entries, or 16 (re, im) pairs, row-major; `#` comments.
Mat4 parse_state(const std::string& text) {
  std::string cleaned;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (char& c : line)
      if (c == ',' || c == ';') c = ' ';
    cleaned += line + '\n';
  }
  std::istringstream tokens(cleaned);
  std::vector<double> v;
  std::string tok;
  while (tokens >> tok) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(x))
      throw InvalidParameter("state file: '" + tok + "' is not a number");
    v.push_back(x);
  }
  Mat4 rho;
  if (v.size() == 16) {
    for (int i = 0; i < 16; ++i) rho(i / 4, i % 4) = v[i];
  } else if (v.size() == 32) {
    for (int i = 0; i < 16; ++i) rho(i / 4, i % 4) = cplx(v[2 * i], v[2 * i + 1]);
  } else {
    throw InvalidParameter("state file must hold 16 real or 32 (re, im) numbers, found " +
                           std::to_string(v.size()));
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidParameter("state is not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-8) throw InvalidParameter("state trace is not 1");
  if (min_eigenvalue(rho) < -kClampTolerance)
    throw InvalidParameter("state has a negative eigenvalue");
  return rho;
}

Mat8 initial_state(const std::string& name, const Mat8& H) {
  Mat8 rho = Mat8::Zero();
  if (name == "mixed") return Mat8::Identity() / 8.0;
  if (name == "down") {
    rho(0, 0) = 1.0;
  } else if (name == "up") {
    rho(7, 7) = 1.0;
  } else {  // ground
    const NumericSpectrum ns = numeric_eigensystem(H);
    rho = projector(ns.vectors.col(0));
  }
  return rho;
}

class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidParameter("cannot write '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-equilibrium steady states of a driven three-spin chain", "ness"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  const std::vector<std::string> methods{"nullspace", "rk4"};
  const std::vector<std::string> jump_modes{"generic", "analytic"};
  const std::vector<std::string> sides{"B", "A"};

  ChainOptions chain;
  BathOptions bath;
  RangeOptions range;
  std::string pair_text = "13";
  std::string method = "nullspace";
  std::string jump_mode = "generic";
  std::string side = "B";
  std::string out_path;

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues, mixing angles and frequencies");
  add_chain(spectrum_cmd, chain, false);
  add_range(spectrum_cmd, range, "k");
  spectrum_cmd->add_option("--out", out_path, "CSV path for a k sweep (default stdout)");

  auto* steady_cmd = app.add_subcommand("steady", "Steady-state correlations of one pair");
  add_chain(steady_cmd, chain, true);
  add_bath(steady_cmd, bath);
  steady_cmd->add_option("--pair", pair_text)->check(CLI::IsMember({"12", "13", "23"}));
  steady_cmd->add_option("--method", method)->check(CLI::IsMember(methods));
  steady_cmd->add_option("--jump-mode", jump_mode)->check(CLI::IsMember(jump_modes));
  steady_cmd->add_option("--side", side, "Measured subsystem")->check(CLI::IsMember(sides));

  double dt = 0.0;
  long steps = 0;
  long sample_every = 1;
  std::string frame = "schrodinger";
  std::string initial = "mixed";
  auto* evolve_cmd = app.add_subcommand("evolve", "RK4 trajectory of the level populations");
  add_chain(evolve_cmd, chain, true);
  add_bath(evolve_cmd, bath);
  evolve_cmd->add_option("--steps", steps)->required()->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--dt", dt, "Time step (default chosen from the generator)");
  evolve_cmd->add_option("--sample-every", sample_every)->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--frame", frame)
      ->check(CLI::IsMember({"schrodinger", "interaction"}));
  evolve_cmd->add_option("--initial", initial)
      ->check(CLI::IsMember({"mixed", "ground", "up", "down"}));
  evolve_cmd->add_option("--jump-mode", jump_mode)->check(CLI::IsMember(jump_modes));
  evolve_cmd->add_option("--out", out_path, "CSV path (default stdout)");

  std::string config_path;
  bool serial = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep from a config file");
  sweep_cmd->add_option("--config", config_path)->required();
  sweep_cmd->add_option("--out", out_path, "CSV path (overrides the config)");
  sweep_cmd->add_flag("--serial", serial, "Evaluate points on one thread");

  auto* pure_cmd = app.add_subcommand("purestate", "Pair correlations in the eigenstate phi_5");
  pure_cmd->add_option("--k", chain.k);
  pure_cmd->add_option("--J", chain.J)->capture_default_str();
  pure_cmd->add_option("--pair", pair_text, "Pair, or a comma list for k sweeps");
  add_range(pure_cmd, range, "k");
  pure_cmd->add_option("--out", out_path, "CSV path for a k sweep (default stdout)");

  std::string state_path;
  auto* discord_cmd = app.add_subcommand("discord", "Correlations of a two-qubit state from a file");
  discord_cmd->add_option("--state-file", state_path)->required();
  discord_cmd->add_option("--side", side, "Measured subsystem")->check(CLI::IsMember(sides));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    const ChainParams params{chain.J, chain.h, chain.k};
    if (!params.in_tested_regime())
      err << "warning: negative h or k is outside the range the tests cover\n";

    if (*spectrum_cmd) {
      if (!range.active()) {
        if (spectrum_cmd->count("--h") == 0 || spectrum_cmd->count("--k") == 0)
          throw InvalidParameter("spectrum needs --h and --k, or --h with a k range");
        out << spectrum_json(params).dump(2) << '\n';
        return kExitOk;
      }
      OutputTarget target(out_path, out);
      auto& os = target.stream();
      os << "h,k";
      for (int l = 1; l <= kLevels; ++l) os << ",epsilon_" << l;
      os << ",B,omega_1,omega_2,omega_3,gap_35\n";
      for (double k : range.values("k")) {
        const ChainParams p{chain.J, chain.h, k};
        const Spectrum s = analytic_eigensystem(p);
        const auto w = transition_frequencies(p);
        os << fmt(p.h) << ',' << fmt(k);
        for (double e : s.energies) os << ',' << fmt(e);
        os << ',' << fmt(s.angles.B) << ',' << fmt(w.omega1) << ',' << fmt(w.omega2) << ','
           << fmt(w.omega3) << ',' << fmt(energy_gap_35(p)) << '\n';
      }
      return kExitOk;
    }

    if (*steady_cmd) {
      const BathSpec b = bath.resolve();
      params.validate();
      const auto jumps =
          build_jump_operators(analytic_eigensystem(params), to_jump_mode(jump_mode),
                               10.0 * b.min_gamma());
      for (const auto& w : jumps.warnings) err << "warning: " << w << '\n';
      PointOptions opts;
      opts.method = to_method(method);
      opts.jump_mode = to_jump_mode(jump_mode);
      opts.discord.side = to_side(side);
      const auto rows = evaluate_point(params, b, {parse_pair(pair_text)}, opts);
      out << to_json(rows.front()).dump(2) << '\n';
      return kExitOk;
    }

    if (*evolve_cmd) {
      const BathSpec b = bath.resolve();
      const MasterEquation eq(params, b, to_jump_mode(jump_mode));
      EvolveOptions opts;
      opts.frame = frame == "interaction" ? Frame::interaction : Frame::schrodinger;
      opts.spectral_radius = spectral_radius(generator(eq, opts.frame));
      opts.dt = dt > 0.0 ? dt : default_time_step(*opts.spectral_radius, opts.frame);
      opts.steps = steps;
      opts.sample_every = sample_every;
      const Trajectory traj = evolve_rk4(eq, initial_state(initial, eq.hamiltonian()), opts);
      OutputTarget target(out_path, out);
      auto& os = target.stream();
      os << "t";
      for (int l = 1; l <= kLevels; ++l) os << ",P" << l;
      os << ",trace,min_eigenvalue\n";
      for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const Mat8& rho = traj.states[i];
        os << fmt(traj.times[i]);
        for (double p : occupation_probabilities(rho, eq.spectrum())) os << ',' << fmt(p);
        os << ',' << fmt(rho.trace().real()) << ',' << fmt(min_eigenvalue(rho)) << '\n';
      }
      return kExitOk;
    }

    if (*sweep_cmd) {
      SweepConfig config = parse_config(read_file(config_path));
      if (!out_path.empty()) config.output = out_path;
      const SweepResult result = run_sweep(config, serial ? Execution::serial : Execution::parallel);
      {
        OutputTarget target(config.output, out);
        write_csv(target.stream(), config, result.rows);
      }
      if (!result.failures.empty()) {
        if (config.output.empty()) {
          write_failures_csv(err, result.failures);
        } else {
          OutputTarget sidecar(failures_path(config.output), err);
          write_failures_csv(sidecar.stream(), result.failures);
        }
        err << result.failures.size() << " point(s) failed\n";
        return kExitNumerical;
      }
      return kExitOk;
    }

    if (*pure_cmd) {
      if (!range.active()) {
        if (pure_cmd->count("--k") == 0) throw InvalidParameter("purestate needs --k or a k range");
        const SpinPair pair = parse_pair(pair_text);
        json j = correlation_json(pure_state_pair_correlations(chain.k, pair, chain.J));
        j["k"] = chain.k;
        j["pair"] = to_string(pair);
        out << j.dump(2) << '\n';
        return kExitOk;
      }
      std::vector<SpinPair> pairs;
      std::stringstream ss(pair_text);
      for (std::string item; std::getline(ss, item, ',');) pairs.push_back(parse_pair(item));
      OutputTarget target(out_path, out);
      auto& os = target.stream();
      os << "k,pair,discord,classical_correlation,mutual_information,concurrence\n";
      for (double k : range.values("k")) {
        for (SpinPair pair : pairs) {
          const auto r = pure_state_pair_correlations(k, pair, chain.J);
          os << fmt(k) << ',' << to_string(pair) << ',' << fmt(r.discord) << ','
             << fmt(r.classical_correlation) << ',' << fmt(r.mutual_information) << ','
             << fmt(r.concurrence) << '\n';
        }
      }
      return kExitOk;
    }

    if (*discord_cmd) {
      const Mat4 rho = parse_state(read_file(state_path));
      DiscordOptions opts;
      opts.side = to_side(side);
      out << correlation_json(correlation_record(rho, opts)).dump(2) << '\n';
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.numerical() ? kExitNumerical : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace ness
