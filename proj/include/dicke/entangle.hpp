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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string_view>

#include "dicke/qstate.hpp"

namespace dicke {

enum class Separability { separable, entangled };

inline constexpr std::string_view to_string(Separability s) {
  return s == Separability::separable ? "separable" : "entangled";
}

/// |xi| or |min eigenvalue| at or below this counts as the separable boundary.
inline constexpr double kBoundaryTolerance = 1e-12;

/// X-state concurrence 2 max{0, |rho23| - sqrt(rho11 rho44)}.
inline double concurrence_x(const XState& x) {
  const double product = std::max(0.0, x.rho11() * x.rho44());
  return std::clamp(2.0 * (std::abs(x.rho23()) - std::sqrt(product)), 0.0, 1.0);
}

/// rho11 rho44 - |rho23|^2. Negative exactly for entangled X states.
inline double xi(const XState& x) { return x.rho11() * x.rho44() - std::norm(x.rho23()); }

inline Separability xi_verdict(const XState& x) {
  return xi(x) < -kBoundaryTolerance ? Separability::entangled : Separability::separable;
}

/// sigma_y (x) sigma_y in the computational basis.
inline Matrix4 sigma_yy() {
  Matrix4 m = Matrix4::Zero();
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

/// Wootters concurrence of an arbitrary two-qubit state.
///
/// The lambdas are square roots of the spectrum of
/// sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho), which is Hermitian PSD and
/// similar to rho (sy x sy) rho* (sy x sy). Negative eigenvalues from
/// roundoff are clamped to zero.
inline double concurrence_general(const DensityMatrix& rho) {
  const Matrix4 h = hermitian_part(rho.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix4> spectral(h);
  if (spectral.info() != Eigen::Success) throw std::runtime_error("concurrence: eigensolver failed");
  const Eigen::Vector4d root_eigs = spectral.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix4 sqrt_rho = spectral.eigenvectors() * root_eigs.cast<Complex>().asDiagonal() *
                           spectral.eigenvectors().adjoint();

  const Matrix4 flip = sigma_yy();
  const Matrix4 flipped = flip * h.conjugate() * flip;
  const Eigen::Vector4d eigs = hermitian_eigenvalues(sqrt_rho * flipped * sqrt_rho);

  std::array<double, 4> lambda{};
  for (Eigen::Index i = 0; i < 4; ++i) lambda[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, eigs(i)));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::clamp(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0, 1.0);
}

/// Partial transpose over atom B: <iA jB|rho|kA lB> -> <iA lB|rho|kA jB>.
inline Matrix4 partial_transpose_b(const Matrix4& m) {
  Matrix4 out;
  for (Eigen::Index ia = 0; ia < 2; ++ia)
    for (Eigen::Index jb = 0; jb < 2; ++jb)
      for (Eigen::Index ka = 0; ka < 2; ++ka)
        for (Eigen::Index lb = 0; lb < 2; ++lb) out(2 * ia + jb, 2 * ka + lb) = m(2 * ia + lb, 2 * ka + jb);
  return out;
}

inline double partial_transpose_min_eigenvalue(const DensityMatrix& rho) {
  return hermitian_eigenvalues(partial_transpose_b(rho.matrix()))(0);
}

/// Peres-Horodecki test; exact for two qubits.
inline Separability ppt_verdict(const DensityMatrix& rho) {
  return partial_transpose_min_eigenvalue(rho) < -kBoundaryTolerance ? Separability::entangled
                                                                      : Separability::separable;
}

struct EntanglementReport {
  double concurrence = 0.0;
  double xi = 0.0;
  Separability verdict = Separability::separable;
};

inline EntanglementReport entanglement_report(const XState& x) { return {concurrence_x(x), xi(x), xi_verdict(x)}; }

}  // namespace dicke
