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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ness/cli.hpp"

using doctest::Approx;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ness");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = ness::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ness_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

long lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("spectrum json") {
  const auto r = run({"spectrum", "--h", "1", "--k", "2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["epsilon_5"].get<double>() == Approx(-6.464102).epsilon(1e-6));
  CHECK(j["B"].get<double>() == Approx(std::sqrt(12.0)));
  for (const char* key : {"omega_1", "omega_2", "omega_3", "gap_35", "alpha_1", "alpha_2", "epsilon_8"})
    CHECK(j.contains(key));
}

TEST_CASE("spectrum over a k range") {
  const auto r = run({"spectrum", "--h", "2", "--k-min", "0", "--k-max", "4", "--k-steps", "5"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out) == 6);
  CHECK(r.out.rfind("h,k,epsilon_1", 0) == 0);
}

TEST_CASE("purestate") {
  const auto r = run({"purestate", "--k", "0", "--pair", "13"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["concurrence"].get<double>() == Approx(0.5).epsilon(1e-12));
  const auto csv = run({"purestate", "--k-min", "0", "--k-max", "2", "--k-steps", "3", "--pair", "13,23"});
  REQUIRE(csv.code == 0);
  CHECK(lines(csv.out) == 7);
}

TEST_CASE("steady") {
  const auto r = run({"steady", "--h", "6", "--k", "8", "--t-mean", "1.2", "--delta-t", "0.8"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["T1"].get<double>() == Approx(1.6));
  CHECK(j["residual_norm"].get<double>() < 1e-8);
  CHECK(j["pair"] == "13");
}

TEST_CASE("evolve writes a trajectory") {
  const auto path = scratch("traj.csv");
  const auto r = run({"evolve", "--h", "1", "--k", "2", "--t1", "1.6", "--t3", "0.8", "--steps", "100",
                      "--sample-every", "10", "--initial", "down", "--out", path.string()});
  REQUIRE(r.code == 0);
  const auto csv = slurp(path);
  CHECK(lines(csv) == 12);
  CHECK(csv.rfind("t,P1,P2,P3,P4,P5,P6,P7,P8,trace,min_eigenvalue\n", 0) == 0);
}

TEST_CASE("sweep with a three-point grid") {
  const auto conf = scratch("three.conf");
  const auto out = scratch("three.csv");
  write(conf, "h_min = 1\nh_max = 3\nh_steps = 3\nk = 2\nt_mean = 1.8\ndelta_t = 0.5\n");
  const auto r = run({"sweep", "--config", conf.string(), "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(lines(slurp(out)) == 7);
  const auto serial = scratch("three_serial.csv");
  REQUIRE(run({"sweep", "--config", conf.string(), "--out", serial.string(), "--serial"}).code == 0);
  CHECK(slurp(serial) == slurp(out));
}

TEST_CASE("sweep with a failing point writes the sidecar and exits 2") {
  const auto conf = scratch("cross.conf");
  const auto out = scratch("cross.csv");
  fs::remove(out.string() + ".errors.csv");
  // h = k = 0 makes levels 1 and 4 degenerate.
  write(conf, "h = 0, 1\nk = 0\nt1 = 1.6\nt3 = 0.8\npairs = 13\n");
  const auto r = run({"sweep", "--config", conf.string(), "--out", out.string()});
  CHECK(r.code == 2);
  CHECK(lines(slurp(out)) == 2);
  const auto side = slurp(out.string() + ".errors.csv");
  CHECK(lines(side) == 2);
  CHECK(side.find("0,0,1.6,0.8,") != std::string::npos);
}

TEST_CASE("discord from a state file") {
  const auto real = scratch("bell.txt");
  write(real, "# Phi+\n0.5 0 0 0.5\n0 0 0 0\n0 0 0 0\n0.5 0 0 0.5\n");
  auto r = run({"discord", "--state-file", real.string()});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["discord"].get<double>() == Approx(1.0).epsilon(1e-10));
  CHECK(j["concurrence"].get<double>() == Approx(1.0).epsilon(1e-10));

  // Psi+ with a relative phase i, given as (re, im) pairs.
  const auto cx = scratch("psi.txt");
  write(cx, "0 0  0 0    0 0    0 0\n"
            "0 0  0.5 0  0 -0.5 0 0\n"
            "0 0  0 0.5  0.5 0  0 0\n"
            "0 0  0 0    0 0    0 0\n");
  r = run({"discord", "--state-file", cx.string(), "--side", "A"});
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["mutual_information"].get<double>() == Approx(2.0).epsilon(1e-10));
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"spectrum", "--h", "abc", "--k", "1"}).code == 1);
  CHECK(run({"steady", "--h", "1", "--k", "2"}).code == 1);  // no temperatures
  CHECK(run({"steady", "--h", "1", "--k", "2", "--t-mean", "0.2", "--delta-t", "0.8"}).code == 1);
  CHECK(run({"steady", "--h", "1", "--k", "2", "--t1", "1", "--t3", "1", "--pair", "14"}).code == 1);
  CHECK(run({"sweep", "--config", scratch("missing.conf").string()}).code == 1);

  const auto bad = scratch("bad.conf");
  write(bad, "bogus = 1\n");
  const auto r = run({"sweep", "--config", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("bogus") != std::string::npos);

  const auto state = scratch("bad_state.txt");
  write(state, "1 0 0\n");
  CHECK(run({"discord", "--state-file", state.string()}).code == 1);
  write(state, "0.5 0.1 0 0\n0 0.5 0 0\n0 0 0 0\n0 0 0 0\n");
  CHECK(run({"discord", "--state-file", state.string()}).code == 1);
}

TEST_CASE("numerical failures exit with 2") {
  const auto r = run({"steady", "--h", "0", "--k", "0", "--t1", "1", "--t3", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("degenerate") != std::string::npos);
  CHECK(run({"steady", "--h", "2", "--k", "1", "--t1", "1", "--t3", "1", "--jump-mode", "analytic"}).code ==
        2);
}

TEST_CASE("help exits with 0") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sweep") != std::string::npos);
}

}  // TEST_SUITE
