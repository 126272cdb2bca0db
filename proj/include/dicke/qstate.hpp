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
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace dicke {

using Complex = std::complex<double>;
using Matrix4 = Eigen::Matrix4cd;

/// Two-atom computational basis. Index 0..3 maps to |++>, |+->, |-+>, |-->,
/// where |+> is the excited and |-> the ground state of one atom.
inline constexpr std::array<std::string_view, 4> kBasisOrder = {"++", "+-", "-+", "--"};

inline constexpr std::size_t kUpUp = 0;
inline constexpr std::size_t kUpDown = 1;
inline constexpr std::size_t kDownUp = 2;
inline constexpr std::size_t kDownDown = 3;

struct Tolerances {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  /// Smallest admissible eigenvalue is -psd.
  double psd = 1e-9;
};

/// Raised for states or parameters outside their physical domain.
class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A 4x4 complex matrix over the two-atom basis. Construction never checks
/// physicality; use validate() for that.
class DensityMatrix {
 public:
  DensityMatrix() : m_(Matrix4::Identity() / 4.0) {}
  explicit DensityMatrix(const Matrix4& m) : m_(m) {}

  const Matrix4& matrix() const { return m_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  Complex trace() const { return m_.trace(); }

  friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

 private:
  Matrix4 m_;
};

/// Density matrix restricted to the pattern
///
///   [ r11  0    0    0   ]
///   [ 0    r22  r23  0   ]
///   [ 0    r32  r33  0   ]
///   [ 0    0    0    r44 ]
///
/// with r32 = conj(r23). Instances are always physical: the factory rejects
/// negative populations, bad normalization and |r23|^2 > r22 r33.
class XState {
 public:
  static XState create(double rho11, double rho22, double rho33, double rho44, Complex rho23,
                       const Tolerances& tol = {}) {
    const std::array<double, 4> pops{rho11, rho22, rho33, rho44};
    for (double p : pops) {
      if (!std::isfinite(p)) throw InvalidState("XState: non-finite population");
      if (p < -tol.psd) throw InvalidState("XState: negative population " + std::to_string(p));
    }
    if (!std::isfinite(rho23.real()) || !std::isfinite(rho23.imag()))
      throw InvalidState("XState: non-finite coherence");
    const double sum = rho11 + rho22 + rho33 + rho44;
    if (std::abs(sum - 1.0) > tol.trace)
      throw InvalidState("XState: populations sum to " + std::to_string(sum));
    if (std::norm(rho23) > rho22 * rho33 + tol.psd)
      throw InvalidState("XState: |rho23|^2 exceeds rho22*rho33");
    return XState(rho11, rho22, rho33, rho44, rho23);
  }

  double rho11() const { return r11_; }
  double rho22() const { return r22_; }
  double rho33() const { return r33_; }
  double rho44() const { return r44_; }
  Complex rho23() const { return r23_; }
  Complex rho32() const { return std::conj(r23_); }

  /// True when rho22 == rho33 within `tol`, i.e. the populations are
  /// symmetric under exchange of the two atoms.
  bool population_symmetric(double tol = 1e-12) const { return std::abs(r22_ - r33_) <= tol; }

  friend bool operator==(const XState&, const XState&) = default;

 private:
  XState(double r11, double r22, double r33, double r44, Complex r23)
      : r11_(r11), r22_(r22), r33_(r33), r44_(r44), r23_(r23) {}

  double r11_;
  double r22_;
  double r33_;
  double r44_;
  Complex r23_;
};

inline void require_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0))
    throw InvalidState(std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
}

inline DensityMatrix from_x_params(const XState& x) {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = x.rho11();
  m(1, 1) = x.rho22();
  m(2, 2) = x.rho33();
  m(3, 3) = x.rho44();
  m(1, 2) = x.rho23();
  m(2, 1) = x.rho32();
  return DensityMatrix(m);
}

/// Reads the X-pattern entries of a full matrix. Off-pattern entries are
/// dropped, so callers wanting a faithful projection should check
/// off_x_pattern_norm() first. Re-checks physicality.
inline XState x_part(const DensityMatrix& rho, const Tolerances& tol = {}) {
  const Matrix4& m = rho.matrix();
  const Complex r23 = 0.5 * (m(1, 2) + std::conj(m(2, 1)));
  return XState::create(m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(), r23, tol);
}

/// Largest modulus among entries that an X state keeps at zero.
inline double off_x_pattern_norm(const DensityMatrix& rho) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      const bool kept = (i == j) || (i == 1 && j == 2) || (i == 2 && j == 1);
      if (!kept) worst = std::max(worst, std::abs(rho.matrix()(i, j)));
    }
  }
  return worst;
}

/// Werner state with singlet fidelity F.
inline XState werner(double fidelity) {
  require_unit_interval(fidelity, "F");
  const double outer = (1.0 - fidelity) / 3.0;
  const double inner = (1.0 + 2.0 * fidelity) / 6.0;
  const double coherence = (1.0 - 4.0 * fidelity) / 6.0;
  return XState::create(outer, inner, inner, outer, coherence);
}

/// Singlet-free family: mixture of |++>, |Psi+> and |--> with weights a/3,
/// 2/3 and (1-a)/3.
inline XState rho_tilde(double a) {
  require_unit_interval(a, "a");
  constexpr double third = 1.0 / 3.0;
  return XState::create(a / 3.0, third, third, (1.0 - a) / 3.0, third);
}

/// rho_tilde with a singlet admixture: (1/3){2 eps |Psi-><Psi-| + a |++><++|
/// + 2 |Psi+><Psi+| + (1 - a - 2 eps) |--><--|}.
inline XState rho_tilde_eps(double a, double eps) {
  if (!(a >= 0.0) || !(eps >= 0.0) || !(a + 2.0 * eps <= 1.0))
    throw InvalidState("rho_tilde_eps requires a >= 0, eps >= 0 and a + 2 eps <= 1");
  const double inner = (1.0 + eps) / 3.0;
  return XState::create(a / 3.0, inner, inner, (1.0 - a - 2.0 * eps) / 3.0, (1.0 - eps) / 3.0);
}

inline XState singlet() { return XState::create(0.0, 0.5, 0.5, 0.0, -0.5); }

inline XState triplet_plus() { return XState::create(0.0, 0.5, 0.5, 0.0, 0.5); }

inline XState ground() { return XState::create(0.0, 0.0, 0.0, 1.0, 0.0); }

inline XState excited() { return XState::create(1.0, 0.0, 0.0, 0.0, 0.0); }

/// <Psi-| rho |Psi-> with |Psi-> = (|+-> - |-+>)/sqrt(2).
inline double singlet_fidelity(const DensityMatrix& rho) {
  const Matrix4& m = rho.matrix();
  return 0.5 * (m(1, 1) + m(2, 2) - m(1, 2) - m(2, 1)).real();
}

inline double singlet_fidelity(const XState& x) { return singlet_fidelity(from_x_params(x)); }

// ---------------------------------------------------------------------------
// Validation

struct ValidityReport {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;
  bool passed = false;
};

inline Matrix4 hermitian_part(const Matrix4& m) { return 0.5 * (m + m.adjoint()); }

/// Ascending eigenvalues of the Hermitian part of `m`.
inline Eigen::Vector4d hermitian_eigenvalues(const Matrix4& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("4x4 Hermitian eigensolver failed");
  return solver.eigenvalues();
}

inline ValidityReport validate(const DensityMatrix& rho, const Tolerances& tol = {}) {
  const Matrix4& m = rho.matrix();
  ValidityReport report;
  report.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  report.trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
  if (!m.allFinite()) {
    report.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    report.passed = false;
    return report;
  }
  report.min_eigenvalue = hermitian_eigenvalues(m)(0);
  report.passed = report.hermiticity_defect <= tol.hermiticity && report.trace_defect <= tol.trace &&
                  report.min_eigenvalue >= -tol.psd;
  return report;
}

// ---------------------------------------------------------------------------
// Bell basis

/// Columns are |++>, |Psi+>, |Psi->, |--> in the computational basis.
inline Matrix4 bell_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix4 u = Matrix4::Zero();
  u(kUpUp, 0) = 1.0;
  u(kUpDown, 1) = s;
  u(kDownUp, 1) = s;
  u(kUpDown, 2) = s;
  u(kDownUp, 2) = -s;
  u(kDownDown, 3) = 1.0;
  return u;
}

/// rho expressed in the {|++>, |Psi+>, |Psi->, |-->} basis. The diagonal
/// holds the populations; off-diagonals are the coherences between them.
struct BellDecomposition {
  Matrix4 matrix;

  double upup() const { return matrix(0, 0).real(); }
  double triplet_zero() const { return matrix(1, 1).real(); }
  double singlet() const { return matrix(2, 2).real(); }
  double downdown() const { return matrix(3, 3).real(); }
};

inline BellDecomposition bell_decomposition(const DensityMatrix& rho) {
  const Matrix4 u = bell_basis();
  return {u.adjoint() * rho.matrix() * u};
}

inline DensityMatrix from_bell(const BellDecomposition& bell) {
  const Matrix4 u = bell_basis();
  return DensityMatrix(u * bell.matrix * u.adjoint());
}

}  // namespace dicke
