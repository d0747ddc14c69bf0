// Copyright 2026 The bictx Authors
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
#include <complex>
#include <cstdint>
#include <string>

#include "bictx/behavior.hpp"

namespace bictx {

using cplx = std::complex<double>;

/// Dense 2x2 complex matrix, row major. The scenario never needs anything
/// larger than the 4x4 tensor products below, so no general linear algebra
/// dependency is pulled in.
struct Mat2 {
  std::array<cplx, 4> m{};

  cplx operator()(int i, int j) const { return m[static_cast<std::size_t>(i * 2 + j)]; }
  cplx& operator()(int i, int j) { return m[static_cast<std::size_t>(i * 2 + j)]; }
};

Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 identity2();

/// Dense 4x4 complex matrix, row major.
struct TwoQubitOperator {
  std::array<cplx, 16> m{};

  cplx operator()(int i, int j) const { return m[static_cast<std::size_t>(i * 4 + j)]; }
  cplx& operator()(int i, int j) { return m[static_cast<std::size_t>(i * 4 + j)]; }

  TwoQubitOperator operator*(const TwoQubitOperator& o) const;
  TwoQubitOperator operator-(const TwoQubitOperator& o) const;
  TwoQubitOperator adjoint() const;

  /// max_ij |M_ij - conj(M_ji)|
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const {
    return hermiticity_defect() <= tol;
  }
  /// max_ij |M_ij - N_ij|
  double max_abs_diff(const TwoQubitOperator& o) const;

  static TwoQubitOperator identity();
};

TwoQubitOperator kron(const Mat2& a, const Mat2& b);
TwoQubitOperator commutator(const TwoQubitOperator& a, const TwoQubitOperator& b);

/// Pure qubit state cos(theta)|0> + sin(theta) e^{i phi} |1>, with Bloch
/// components <X> = sin(2 theta) cos(phi), <Y> = sin(2 theta) sin(phi),
/// <Z> = cos(2 theta).
struct QubitState {
  double theta = 0.0;
  double phi = 0.0;

  std::array<cplx, 2> amplitudes() const;
  double bloch_x() const;
  double bloch_y() const;
  double bloch_z() const;
};

using StateVector4 = std::array<cplx, 4>;

StateVector4 product_state(const QubitState& s1, const QubitState& s2);

/// <psi1 x psi2 | obs | psi1 x psi2>. The observable must be Hermitian
/// (std::domain_error otherwise); the residual imaginary part, at most
/// 1e-12, is discarded.
double expectation(const QubitState& s1, const QubitState& s2,
                   const TwoQubitOperator& obs);

/// Which Pauli observables realize the individual properties.
/// MsCompatible is the convention of the joint Molmer-Sorensen measurement:
///   alpha1 = X(x)1, alpha2 = 1(x)Y, beta1 = Y(x)1, beta2 = 1(x)X,
///   A = X(x)Y, B = Y(x)X, A*B = Z(x)Z.
/// BellCompatible is the plain Bell-basis variant, kept for cross-checks:
///   alpha2 = 1(x)X, beta2 = 1(x)Y, A = X(x)X, B = Y(x)Y, A*B = -Z(x)Z.
enum class MeasurementAssignment { MsCompatible, BellCompatible };

struct ObservableSet {
  TwoQubitOperator alpha1, alpha2, beta1, beta2;
  TwoQubitOperator a, b;      // the two jointly measured products
  TwoQubitOperator ab;        // a * b
};

ObservableSet observables(MeasurementAssignment assignment =
                              MeasurementAssignment::MsCompatible);

/// Orthonormal joint-measurement basis with +/-1 outcome labels for (A, B).
/// Labels are derived by applying the observables to each vector and
/// reading off the eigenvalue; they are asserted, never hard-coded, and
/// always satisfy label(A) * label(B) = eigenvalue of the product operator.
struct MeasurementBasis {
  std::array<StateVector4, 4> vectors;
  std::array<int, 4> label_a{};
  std::array<int, 4> label_b{};
  std::array<int, 4> label_ab{};  // eigenvalue of the product observable
};

/// The rotated Bell basis of the Molmer-Sorensen joint measurement:
/// (|00>+i|11>)/sqrt2, (|11>+i|00>)/sqrt2, (|01>-i|10>)/sqrt2,
/// (|10>-i|01>)/sqrt2, labelled for A = X(x)Y and B = Y(x)X.
MeasurementBasis ms_basis();

/// Standard Bell basis labelled for A = X(x)X and B = Y(x)Y.
MeasurementBasis bell_basis();

MeasurementBasis joint_basis(MeasurementAssignment assignment);

/// Exact Born-rule tables of the three settings for a product state
/// s1 (x) s2: local tables factorize, the joint table projects onto the
/// joint basis.
SettingTables born_tables(const QubitState& s1, const QubitState& s2,
                          MeasurementAssignment assignment =
                              MeasurementAssignment::MsCompatible);

/// Behavior (with tables and <A>, <B>) of an arbitrary product state.
Behavior behavior_of_states(const QubitState& s1, const QubitState& s2,
                            MeasurementAssignment assignment =
                                MeasurementAssignment::MsCompatible);

/// Behavior of the symmetric product state psi(theta,phi) (x) psi(theta,phi).
/// Under MsCompatible this gives means (x, y, y, x) and corr_AB = cos^2(2 theta).
Behavior ideal_behavior(double theta, double phi,
                        MeasurementAssignment assignment =
                            MeasurementAssignment::MsCompatible);

enum class Setting : int { AlphaLocal = 0, BetaLocal = 1, JointMS = 2 };

const char* to_string(Setting s);

/// Outcome counts of one setting, cell order (+,+), (+,-), (-,+), (-,-).
/// For JointMS the pair is the (A, B) label pair.
struct OutcomeCounts {
  Setting setting = Setting::AlphaLocal;
  std::uint64_t shots = 0;
  std::array<std::uint64_t, 4> counts{};
};

/// Draws i.i.d. outcomes from the exact Born probabilities of the chosen
/// setting. Deterministic given (seed): the per-setting stream is derived
/// from the seed and the setting index, so sampling one setting does not
/// perturb another. shots must be >= 1.
OutcomeCounts sample_setting(const QubitState& s1, const QubitState& s2,
                             Setting setting, std::uint64_t shots,
                             std::uint64_t seed);

/// Algebra report for the 3x3 square of two-qubit Pauli products
///   X(x)1  1(x)X  X(x)X
///   1(x)Y  Y(x)1  Y(x)Y
///   X(x)Y  Y(x)X  Z(x)Z
/// Rows 1-3 and columns 1-2 multiply to +1, column 3 to -1, and all
/// operators within a row or column commute; no pre-assigned +/-1 values
/// can satisfy those constraints simultaneously.
struct MerminPeresReport {
  std::array<std::array<std::string, 3>, 3> labels;
  std::array<int, 3> row_sign{};
  std::array<int, 3> col_sign{};
  std::array<double, 3> row_product_defect{};  // max |P - sign * I|
  std::array<double, 3> col_product_defect{};
  double max_commutator = 0.0;  // over all in-context pairs
  /// The three contexts realizing this scenario: columns 1 and 2 hold the
  /// two local settings and row 3 the joint setting.
  std::array<std::array<std::string, 3>, 3> scenario_contexts;

  bool pass(double tol = 1e-12) const;
};

MerminPeresReport verify_mermin_peres();

}  // namespace bictx
