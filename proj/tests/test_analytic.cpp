// Copyright 2026 The dicke Authors
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

#include <catch_amalgamated.hpp>

#include <random>

#include "dicke/analytic.hpp"
#include "dicke/entangle.hpp"
#include "test_support.hpp"

using namespace dicke;
using dicke::testing::max_abs_diff;
using Catch::Approx;

TEST_CASE("s_invariants", "[analytic]") {
  const SInvariants s = s_invariants(singlet());
  CHECK(s.s_minus == Approx(2.0));
  CHECK(std::abs(s.s_plus) < 1e-16);
  CHECK(s.rho_i0 == 0.0);

  for (double f : {0.0, 0.3, 0.75, 1.0}) {
    const SInvariants w = s_invariants(werner(f));
    CHECK(std::abs(w.s_minus - 2 * f) < 1e-15);
    CHECK(std::abs(w.s_plus - (2 - 2 * f) / 3) < 1e-15);
  }
  for (double a : {0.0, 0.5, 1.0}) {
    const SInvariants r = s_invariants(rho_tilde(a));
    CHECK(std::abs(r.s_minus) < 1e-15);
    CHECK(r.s_plus == Approx(4.0 / 3));
    CHECK(r.rho11_0 == Approx(a / 3));
  }
  CHECK(std::abs(s_invariants(rho_tilde_eps(0.3, 0.01)).s_minus - 0.04 / 3) < 1e-15);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const XState x = testing::random_x_state(rng, false);
    const SInvariants r = s_invariants(x);
    CHECK(r.s_minus >= -1e-15);
    CHECK(r.s_plus >= -1e-15);
    CHECK(std::abs(r.s_minus + r.s_plus - 2 * (x.rho22() + x.rho33())) < 1e-15);
  }
}

TEST_CASE("evolve_x examples", "[analytic]") {
  const ModelParams p{1.3, 0.7, 2.0};
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const XState x = testing::random_x_state(rng, true);
    CHECK(max_abs_diff(evolve_x(x, p, 0.0), x) < 1e-15);
  }
  for (double t : {0.0, 0.5, 3.0, 40.0})
    for (ModelParams q : {ModelParams{1, 0, 0}, ModelParams{2, 5, 1}, ModelParams{0.1, -3, 0}})
      CHECK(max_abs_diff(evolve_x(singlet(), q, t), singlet()) <= 1e-15);

  for (double t : {0.1, 1.0, 4.0}) {
    const XState r = evolve_x(rho_tilde(0.0), p, t);
    CHECK(std::abs(r.rho23().real() - std::exp(-2 * p.gamma_decay * t) / 3) < 1e-16);
    CHECK(r.rho11() == 0.0);
  }
}

TEST_CASE("evolve_x rejects out-of-domain input", "[analytic]") {
  const ModelParams p{};
  CHECK_THROWS_AS(evolve_x(werner(0.5), p, -1.0), InvalidState);
  CHECK_THROWS_AS(evolve_x(XState::create(0, 1, 0, 0, 0), p, 1.0), InvalidState);
  CHECK_THROWS_AS(evolve_x(werner(0.5), ModelParams{-1, 0, 0}, 1.0), InvalidState);
  CHECK_THROWS_AS(evolve_werner(1.2, p, 1.0), InvalidState);
  CHECK_THROWS_AS(evolve_werner(0.5, p, -0.1), InvalidState);
}

TEST_CASE("evolve_x agrees with the exact propagator", "[analytic][oracle]") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    const XState x = testing::random_x_state(rng, true);
    const double gamma = 0.5 + (i % 4);
    const double shift = (i % 3) * 2.5 - 1.0;
    const double omega0 = (i % 5) * 1.7;
    for (double t : {0.0, 0.3, 1.1, 2.5}) {
      const Matrix4 exact = testing::exact_evolution(from_x_params(x).matrix(), gamma, shift, omega0, t);
      CHECK(max_abs_diff(from_x_params(evolve_x(x, {gamma, shift, omega0}, t)).matrix(), exact) < 1e-12);
    }
  }
}

TEST_CASE("evolve_werner examples", "[analytic]") {
  const ModelParams p{1.0, 0.0, 0.0};
  for (double t : {0.0, 1.0, 10.0}) CHECK(max_abs_diff(evolve_werner(1.0, p, t), singlet()) < 1e-15);

  const XState late = evolve_werner(0.25, p, 60.0);
  CHECK(late.rho22() == Approx(0.125));
  CHECK(late.rho23().real() == Approx(-0.125));
  CHECK(late.rho44() == Approx(0.75));

  CHECK(evolve_werner(0.75, {1, 0, 0}, 1.0) == evolve_werner(0.75, {1, 5, 0}, 1.0));
}

TEST_CASE("evolve_werner specializes evolve_x", "[analytic][property]") {
  for (int i = 0; i < 20; ++i) {
    const double f = i / 19.0;
    for (int j = 0; j < 20; ++j) {
      const double gt = 0.5 * j;
      for (double shift : {0.0, 2.0}) {
        const ModelParams p{2.0, shift, 0.0};
        CHECK(max_abs_diff(evolve_werner(f, p, gt / 2.0), evolve_x(werner(f), p, gt / 2.0)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("evolve_x invariants", "[analytic][property]") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> gt_dist(0.0, 50.0);
  std::uniform_real_distribution<double> shift_dist(-5.0, 5.0);
  const Tolerances tol{};
  for (int i = 0; i < 300; ++i) {
    const XState x = testing::random_x_state(rng, true);
    const ModelParams p{1.0, shift_dist(rng), 0.0};
    const XState y = evolve_x(x, p, gt_dist(rng));
    CHECK(std::abs(y.rho11() + y.rho22() + y.rho33() + y.rho44() - 1.0) <= 1e-15);
    CHECK(validate(from_x_params(y), tol).passed);
  }
}

TEST_CASE("real coherence makes gamma irrelevant", "[analytic][property]") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 50; ++i) {
    const XState z = testing::random_x_state(rng, true);
    const XState x = XState::create(z.rho11(), z.rho22(), z.rho33(), z.rho44(), std::abs(z.rho23()) * (i % 2 ? 1 : -1));
    for (double t : {0.2, 2.0})
      CHECK(max_abs_diff(evolve_x(x, {1, 0, 0}, t), evolve_x(x, {1, 4.5, 0}, t)) == 0.0);
  }
}

TEST_CASE("long_time_limit", "[analytic]") {
  for (double f : {0.0, 0.25, 0.6, 1.0}) CHECK(std::abs(concurrence_x(long_time_limit(werner(f))) - f) < 1e-15);
  for (double a : {0.0, 0.3, 1.0}) CHECK(max_abs_diff(long_time_limit(rho_tilde(a)), ground()) < 1e-15);
  for (double eps : {0.01, 0.05}) {
    const double c = concurrence_x(long_time_limit(rho_tilde_eps(0.3, eps)));
    CHECK(std::abs(c - 2 * eps / 3) < 1e-15);
  }
}

TEST_CASE("evolve_x converges to the stationary state", "[analytic][property]") {
  // Slowest surviving factor is exp(-Gamma t); all prefactors are <= 1.
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const XState x = testing::random_x_state(rng, true);
    const XState limit = long_time_limit(x);
    for (double gt : {10.0, 15.0, 25.0, 40.0}) {
      const double bound = (1 + gt) * std::exp(-gt);
      CHECK(max_abs_diff(evolve_x(x, {1, 3.0, 0}, gt), limit) <= bound);
    }
  }
}
