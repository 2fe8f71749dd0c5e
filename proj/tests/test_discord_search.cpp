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

#include <cmath>
#include <random>

#include "ness/correlations.hpp"
#include "ness/discord_search.hpp"
#include "oracles.hpp"

using namespace ness;
using doctest::Approx;

TEST_SUITE("discord_search") {

TEST_CASE("grid coordinates") {
  const auto g = full_sphere_grid(48, 96);
  CHECK(g.theta(0) == 0.0);
  CHECK(g.theta(47) == Approx(M_PI / 2));
  CHECK(g.phi(0) == 0.0);
  CHECK(g.phi(95) < 2 * M_PI);
  CHECK(g.size() == 48 * 96);
}

TEST_CASE("measured entropy agrees with the projector-based definition") {
  std::mt19937_64 rng(30);
  for (int i = 0; i < 10; ++i) {
    const Mat4 s = oracle::random_state(rng);
    const MeasuredEntropy f(s);
    for (double t : {0.1, 0.7, 1.4})
      for (double p : {0.0, 1.0, 4.0}) CHECK(f(t, p) == Approx(conditional_entropy_measured(s, {t, p})).epsilon(1e-12));
  }
}

TEST_CASE("shifting theta by pi/2 relabels the outcomes") {
  std::mt19937_64 rng(31);
  const MeasuredEntropy f(oracle::random_state(rng));
  for (double t : {0.0, 0.4, 1.1})
    for (double p : {0.3, 2.5}) CHECK(f(t + M_PI / 2, p) == Approx(f(t, p)).epsilon(1e-12));
}

TEST_CASE("serial and parallel kernels are bit-identical") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 5; ++i) {
    const MeasuredEntropy f(oracle::random_state(rng));
    const auto g = full_sphere_grid(61, 117);
    CHECK(evaluate_grid(f, g, Execution::serial) == evaluate_grid(f, g, Execution::parallel));
    const auto a = grid_minimum(f, g, Execution::serial);
    const auto b = grid_minimum(f, g, Execution::parallel);
    CHECK(a.value == b.value);
    CHECK(a.theta_index == b.theta_index);
    CHECK(a.phi_index == b.phi_index);

    SearchOptions so;
    so.execution = Execution::serial;
    SearchOptions po;
    po.execution = Execution::parallel;
    const auto rs = minimize_measured_entropy(f, so);
    const auto rp = minimize_measured_entropy(f, po);
    CHECK(rs.entropy == rp.entropy);
    CHECK(rs.theta == rp.theta);
    CHECK(rs.phi == rp.phi);
    CHECK(rs.evaluations == rp.evaluations);
  }
}

TEST_CASE("search is deterministic and beats its own coarse grid") {
  std::mt19937_64 rng(33);
  const MeasuredEntropy f(oracle::random_state(rng));
  const auto a = minimize_measured_entropy(f);
  const auto b = minimize_measured_entropy(f);
  CHECK(a.entropy == b.entropy);
  const auto coarse = grid_minimum(f, full_sphere_grid(48, 96), Execution::serial);
  CHECK(a.entropy <= coarse.value);
  CHECK(a.theta >= 0.0);
  CHECK(a.theta < M_PI);
  CHECK(a.phi >= 0.0);
  CHECK(a.phi < 2 * M_PI);
  CHECK(f(a.theta, a.phi) == Approx(a.entropy).epsilon(1e-14));
}

}  // TEST_SUITE
