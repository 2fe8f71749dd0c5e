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

#include "ness/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "ness/errors.hpp"

namespace ness {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ConfigError("key '" + key + "': '" + text + "' is not a finite number");
  return v;
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(to_double(key, item));
  if (out.empty()) throw ConfigError("key '" + key + "' has no values");
  return out;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + text + "'");
}

using KeyValues = std::map<std::string, std::string>;

std::vector<double> parse_grid(const KeyValues& kv, const std::string& name) {
  const bool has_list = kv.count(name) > 0;
  const bool has_range =
      kv.count(name + "_min") || kv.count(name + "_max") || kv.count(name + "_steps");
  if (has_list && has_range)
    throw ConfigError("give either '" + name + "' or " + name + "_min/_max/_steps, not both");
  std::vector<double> values;
  if (has_list) {
    values = to_doubles(name, kv.at(name));
  } else {
    for (const char* suffix : {"_min", "_max", "_steps"})
      if (!kv.count(name + suffix)) throw ConfigError("missing required key '" + name + suffix + "'");
    const double lo = to_double(name + "_min", kv.at(name + "_min"));
    const double hi = to_double(name + "_max", kv.at(name + "_max"));
    const double steps = to_double(name + "_steps", kv.at(name + "_steps"));
    if (steps < 1 || steps != std::floor(steps))
      throw ConfigError(name + "_steps must be a positive integer");
    if (lo > hi) throw ConfigError(name + "_min must not exceed " + name + "_max");
    values = grid_values(lo, hi, static_cast<int>(steps));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

}  // namespace

std::vector<double> grid_values(double min, double max, int steps) {
  if (steps < 1) throw ConfigError("grid needs at least one step");
  if (min > max) throw ConfigError("grid minimum exceeds maximum");
  std::vector<double> v(static_cast<std::size_t>(steps));
  if (steps == 1) {
    v[0] = min;
    return v;
  }
  for (int i = 0; i < steps; ++i) v[i] = min + (max - min) * i / (steps - 1);
  v.back() = max;
  return v;
}

SweepConfig parse_config(std::string_view text) {
  static const std::set<std::string> known = {
      "h",     "h_min",       "h_max",  "h_steps",   "k",      "k_min",
      "k_max", "k_steps",     "t_mean", "delta_t",   "t1",     "t3",
      "gamma", "J",           "pairs",  "method",    "jump_mode", "measure_side",
      "out",   "emit_occupations", "emit_gap"};

  KeyValues kv;
  std::vector<std::string> unknown;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!known.count(key)) {
      unknown.push_back(key);
      continue;
    }
    if (kv.count(key)) throw ConfigError("duplicate key '" + key + "'");
    kv[key] = value;
  }
  if (!unknown.empty()) {
    std::string msg = "unknown config key(s):";
    for (const auto& k : unknown) msg += " '" + k + "'";
    throw ConfigError(msg);
  }

  SweepConfig c;
  if (kv.count("gamma")) c.gamma = to_double("gamma", kv.at("gamma"));
  if (!(c.gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (kv.count("J")) c.J = to_double("J", kv.at("J"));
  if (!(c.J > 0.0)) throw ConfigError("J must be positive");

  const bool mean_form = kv.count("t_mean") || kv.count("delta_t");
  const bool raw_form = kv.count("t1") || kv.count("t3");
  if (mean_form == raw_form)
    throw ConfigError("give exactly one of (t_mean, delta_t) or (t1, t3)");
  if (mean_form) {
    if (!kv.count("t_mean") || !kv.count("delta_t"))
      throw ConfigError("t_mean and delta_t must be given together");
    for (double tm : to_doubles("t_mean", kv.at("t_mean"))) {
      for (double dt : to_doubles("delta_t", kv.at("delta_t"))) {
        const TemperaturePoint t{tm + 0.5 * dt, tm - 0.5 * dt};
        if (!(t.t1 > 0.0) || !(t.t3 > 0.0)) {
          std::ostringstream os;
          os << "t_mean = " << tm << ", delta_t = " << dt << " gives T1 = " << t.t1
             << ", T3 = " << t.t3 << "; both must be positive";
          throw ConfigError(os.str());
        }
        c.temperatures.push_back(t);
      }
    }
  } else {
    if (!kv.count("t1") || !kv.count("t3")) throw ConfigError("t1 and t3 must be given together");
    const TemperaturePoint t{to_double("t1", kv.at("t1")), to_double("t3", kv.at("t3"))};
    if (!(t.t1 > 0.0) || !(t.t3 > 0.0)) throw ConfigError("t1 and t3 must be positive");
    c.temperatures.push_back(t);
  }

  c.h_values = parse_grid(kv, "h");
  c.k_values = parse_grid(kv, "k");

  if (kv.count("pairs")) {
    c.pairs.clear();
    for (const auto& p : split_list(kv.at("pairs"))) {
      try {
        c.pairs.push_back(parse_pair(p));
      } catch (const InvalidParameter& e) {
        throw ConfigError(e.what());
      }
    }
    if (c.pairs.empty()) throw ConfigError("pairs is empty");
  }
  std::sort(c.pairs.begin(), c.pairs.end(),
            [](SpinPair a, SpinPair b) { return to_string(a) < to_string(b); });
  c.pairs.erase(std::unique(c.pairs.begin(), c.pairs.end()), c.pairs.end());

  if (kv.count("method")) {
    const auto& m = kv.at("method");
    if (m == "nullspace") c.method = SteadyStateMethod::nullspace;
    else if (m == "rk4") c.method = SteadyStateMethod::rk4;
    else throw ConfigError("method must be nullspace or rk4, got '" + m + "'");
  }
  if (kv.count("jump_mode")) {
    const auto& m = kv.at("jump_mode");
    if (m == "generic") c.jump_mode = JumpMode::generic;
    else if (m == "analytic") c.jump_mode = JumpMode::analytic;
    else throw ConfigError("jump_mode must be generic or analytic, got '" + m + "'");
  }
  if (kv.count("measure_side")) {
    const auto& m = kv.at("measure_side");
    if (m == "B") c.side = MeasuredSide::B;
    else if (m == "A") c.side = MeasuredSide::A;
    else throw ConfigError("measure_side must be A or B, got '" + m + "'");
  }
  if (kv.count("out")) c.output = kv.at("out");
  if (kv.count("emit_occupations"))
    c.emit_occupations = to_bool("emit_occupations", kv.at("emit_occupations"));
  if (kv.count("emit_gap")) c.emit_gap = to_bool("emit_gap", kv.at("emit_gap"));
  return c;
}

std::vector<CorrelationRow> evaluate_point(const ChainParams& p, const BathSpec& bath,
                                           const std::vector<SpinPair>& pairs,
                                           const PointOptions& opts) {
  const MasterEquation eq(p, bath, opts.jump_mode);
  const SteadyState ss = steady_state(eq, opts.method);
  const auto P = occupation_probabilities(ss.rho, eq.spectrum());
  const double p_sum = std::accumulate(P.begin(), P.end(), 0.0);
  const double gap = energy_gap_35(p);

  std::vector<CorrelationRow> rows;
  for (SpinPair pair : pairs) {
    const CorrelationRecord rec = correlation_record(partial_trace(ss.rho, pair), opts.discord);
    CorrelationRow row;
    row.h = p.h;
    row.k = p.k;
    row.gamma = bath.gamma1;
    row.t1 = bath.t1;
    row.t3 = bath.t3;
    row.pair = pair;
    row.discord = rec.discord;
    row.classical_correlation = rec.classical_correlation;
    row.mutual_information = rec.mutual_information;
    row.concurrence = rec.concurrence;
    row.occupations = P;
    row.gap_35 = gap;
    row.residual_norm = ss.residual;
    row.optimum = rec.optimum;

    std::ostringstream bad;
    if (std::abs(row.discord + row.classical_correlation - row.mutual_information) >= 1e-8)
      bad << "D + C != I; ";
    if (row.concurrence < 0.0 || row.concurrence > 1.0) bad << "concurrence out of [0, 1]; ";
    if (std::abs(p_sum - 1.0) >= 1e-8) bad << "occupations sum to " << p_sum << "; ";
    if (!(row.residual_norm < 1e-8)) bad << "steady-state residual " << row.residual_norm << "; ";
    if (!bad.str().empty()) throw ConvergenceError("row invariant violated: " + bad.str(), ss.residual);
    rows.push_back(row);
  }
  return rows;
}

SweepResult run_sweep(const SweepConfig& config, Execution exec) {
  struct Point {
    TemperaturePoint temps;
    double h;
    double k;
  };
  std::vector<Point> points;
  for (const auto& t : config.temperatures)
    for (double h : config.h_values)
      for (double k : config.k_values) points.push_back({t, h, k});

  PointOptions opts;
  opts.method = config.method;
  opts.jump_mode = config.jump_mode;
  opts.discord.side = config.side;
  // Parallelism lives at the point level; each search stays serial.
  opts.discord.search.execution = Execution::serial;

  struct Outcome {
    std::vector<CorrelationRow> rows;
    std::string error;
  };
  std::vector<Outcome> outcomes(points.size());
  auto solve = [&](std::size_t i) {
    const Point& pt = points[i];
    try {
      const BathSpec bath = BathSpec::from_temperatures(pt.temps.t1, pt.temps.t3, config.gamma);
      outcomes[i].rows = evaluate_point({config.J, pt.h, pt.k}, bath, config.pairs, opts);
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
    }
  };

  const long n = static_cast<long>(points.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) solve(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < n; ++i) solve(static_cast<std::size_t>(i));
  }

  SweepResult result;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!outcomes[i].error.empty()) {
      const Point& pt = points[i];
      result.failures.push_back({pt.h, pt.k, pt.temps.t1, pt.temps.t3, outcomes[i].error});
      continue;
    }
    for (auto& row : outcomes[i].rows) result.rows.push_back(std::move(row));
  }
  return result;
}

int output_precision() {
  if (const char* env = std::getenv("NESS_PRECISION")) {
    const int p = std::atoi(env);
    if (p >= 1 && p <= 17) return p;
  }
  return 12;
}

void write_csv(std::ostream& os, const SweepConfig& config, const std::vector<CorrelationRow>& rows) {
  const int prec = output_precision();
  os << "h,k,gamma,T1,T3,pair,discord,classical_correlation,mutual_information,concurrence";
  if (config.emit_occupations)
    for (int l = 1; l <= kLevels; ++l) os << ",P" << l;
  if (config.emit_gap) os << ",gap_35";
  os << ",residual_norm\n";
  auto num = [&](double v) { return format_number(v, prec); };
  for (const auto& r : rows) {
    os << num(r.h) << ',' << num(r.k) << ',' << num(r.gamma) << ',' << num(r.t1) << ','
       << num(r.t3) << ',' << to_string(r.pair) << ',' << num(r.discord) << ','
       << num(r.classical_correlation) << ',' << num(r.mutual_information) << ','
       << num(r.concurrence);
    if (config.emit_occupations)
      for (double p : r.occupations) os << ',' << num(p);
    if (config.emit_gap) os << ',' << num(r.gap_35);
    os << ',' << num(r.residual_norm) << '\n';
  }
}

void write_failures_csv(std::ostream& os, const std::vector<SweepFailure>& failures) {
  const int prec = output_precision();
  os << "h,k,T1,T3,error\n";
  for (const auto& f : failures) {
    std::string msg = f.message;
    std::replace(msg.begin(), msg.end(), '"', '\'');
    os << format_number(f.h, prec) << ',' << format_number(f.k, prec) << ','
       << format_number(f.t1, prec) << ',' << format_number(f.t3, prec) << ",\"" << msg << "\"\n";
  }
}

std::string failures_path(const std::string& output) { return output + ".errors.csv"; }

nlohmann::json to_json(const CorrelationRow& r) {
  nlohmann::json j;
  j["h"] = r.h;
  j["k"] = r.k;
  j["gamma"] = r.gamma;
  j["T1"] = r.t1;
  j["T3"] = r.t3;
  j["pair"] = to_string(r.pair);
  j["discord"] = r.discord;
  j["classical_correlation"] = r.classical_correlation;
  j["mutual_information"] = r.mutual_information;
  j["concurrence"] = r.concurrence;
  for (int l = 1; l <= kLevels; ++l) j["P" + std::to_string(l)] = r.occupations[l - 1];
  j["gap_35"] = r.gap_35;
  j["residual_norm"] = r.residual_norm;
  j["theta"] = r.optimum.theta;
  j["phi"] = r.optimum.phi;
  return j;
}

}  // namespace ness
