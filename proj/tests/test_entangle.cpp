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

#include "dicke/entangle.hpp"
#include "dicke/lindblad.hpp"
#include "test_support.hpp"

using namespace dicke;
using dicke::testing::projector;
using Catch::Approx;

TEST_CASE("concurrence_x", "[entangle]") {
  CHECK(concurrence_x(singlet()) == Approx(1.0));
  CHECK(concurrence_x(werner(0.25)) == 0.0);
  CHECK(concurrence_x(werner(0.75)) == Approx(0.5).epsilon(1e-14));
  CHECK(concurrence_x(ground()) == 0.0);
}

TEST_CASE("xi", "[entangle]") {
  CHECK(xi(singlet()) == Approx(-0.25));
  CHECK(std::abs(xi(werner(0.5))) < 1e-16);
  CHECK(xi(ground()) == 0.0);
  CHECK(xi(werner(0.25)) == Approx(1.0 / 16));
  CHECK(xi_verdict(werner(0.5)) == Separability::separable);
  CHECK(xi_verdict(werner(0.51)) == Separability::entangled);
}

TEST_CASE("concurrence_general", "[entangle]") {
  CHECK(concurrence_general(from_x_params(XState::create(0, 1, 0, 0, 0))) < 1e-12);
  CHECK(concurrence_general(from_x_params(werner(1.0))) == Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(concurrence_general(from_x_params(werner(0.6))) - 0.2) < 1e-10);
  CHECK(concurrence_general(DensityMatrix(Matrix4::Identity() / 4.0)) == 0.0);
}

TEST_CASE("concurrence_general on pure states matches 2|ad - bc|", "[entangle][oracle]") {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 200; ++i) {
    Eigen::Vector4cd psi;
    for (int k = 0; k < 4; ++k) psi(k) = Complex(gauss(rng), gauss(rng));
    psi.normalize();
    const double oracle = 2.0 * std::abs(psi(0) * psi(3) - psi(1) * psi(2));
    CHECK(std::abs(concurrence_general(DensityMatrix(projector(psi))) - oracle) < 1e-7);
  }
}

TEST_CASE("partial transpose", "[entangle]") {
  const Matrix4 pt = partial_transpose_b(projector(testing::psi_minus()));
  CHECK(std::abs(pt(0, 3) + 0.5) < 1e-15);
  CHECK(std::abs(pt(1, 2)) < 1e-15);
  CHECK(partial_transpose_min_eigenvalue(from_x_params(singlet())) == Approx(-0.5));
  std::mt19937_64 rng(59);
  for (int i = 0; i < 20; ++i) {
    const Matrix4 u = testing::random_unitary<4>(rng);
    const Matrix4 m = u * from_x_params(testing::random_x_state(rng, false)).matrix() * u.adjoint();
    CHECK(testing::max_abs_diff(partial_transpose_b(partial_transpose_b(m)), m) == 0.0);
  }
}

TEST_CASE("ppt_verdict", "[entangle]") {
  CHECK(ppt_verdict(DensityMatrix(Matrix4::Identity() / 4.0)) == Separability::separable);
  CHECK(ppt_verdict(from_x_params(singlet())) == Separability::entangled);
  for (double f : {0.55, 0.75, 0.95}) CHECK(ppt_verdict(from_x_params(werner(f))) == Separability::entangled);
  CHECK(ppt_verdict(from_x_params(werner(0.5))) == Separability::separable);
  CHECK(ppt_verdict(from_x_params(werner(0.3))) == Separability::separable);
}

TEST_CASE("criteria agree on random X states", "[entangle][property]") {
  std::mt19937_64 rng(61);
  int entangled = 0;
  for (int i = 0; i < 1000; ++i) {
    const XState x = testing::random_x_state(rng, i % 2 == 0);
    const DensityMatrix m = from_x_params(x);
    const bool by_xi = xi_verdict(x) == Separability::entangled;
    const bool by_c = concurrence_x(x) > 0.0;
    const bool by_ppt = ppt_verdict(m) == Separability::entangled;
    CHECK(by_xi == by_c);
    CHECK(by_xi == by_ppt);
    CHECK(std::abs(concurrence_x(x) - concurrence_general(m)) <= 1e-10);
    const double c = concurrence_x(x);
    CHECK((c >= 0.0 && c <= 1.0));
    CHECK((xi(x) >= -0.25 && xi(x) <= 0.25));
    entangled += by_xi;
  }
  // both branches exercised
  CHECK(entangled > 100);
  CHECK(entangled < 900);
}

TEST_CASE("xi extremes", "[entangle]") {
  CHECK(xi(singlet()) == -0.25);
  // rho11 = rho44 = 1/2 is a valid X state and reaches the upper bound 1/4.
  CHECK(xi(XState::create(0.5, 0, 0, 0.5, 0)) == 0.25);
  CHECK(xi(XState::create(0.25, 0.25, 0.25, 0.25, 0)) == 0.0625);
}

TEST_CASE("concurrence is invariant under local unitaries", "[entangle][property]") {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho = from_x_params(testing::random_x_state(rng, false));
    const Matrix4 local = kron(testing::random_unitary<2>(rng), testing::random_unitary<2>(rng));
    const DensityMatrix rotated(local * rho.matrix() * local.adjoint());
    CHECK(std::abs(concurrence_general(rho) - concurrence_general(rotated)) <= 1e-10);
  }
}

TEST_CASE("Werner line", "[entangle][property]") {
  double previous = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double f = i / 100.0;
    const double c = concurrence_x(werner(f));
    CHECK(std::abs(c - std::max(0.0, 2 * f - 1)) < 1e-14);
    if (f > 0.5) CHECK(c > previous);
    previous = c;
  }
}

TEST_CASE("entanglement_report", "[entangle]") {
  const EntanglementReport r = entanglement_report(werner(0.75));
  CHECK(r.concurrence == Approx(0.5));
  CHECK(r.xi < 0);
  CHECK(r.verdict == Separability::entangled);
  CHECK(entanglement_report(werner(0.2)).verdict == Separability::separable);
  CHECK(to_string(Separability::entangled) == "entangled");
}
