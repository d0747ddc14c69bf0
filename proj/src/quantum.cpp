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

#include "bictx/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bictx/rng.hpp"

namespace bictx {

namespace {
constexpr double kAlgebraTol = 1e-12;
}

Mat2 pauli_x() { return {{cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)}}; }
Mat2 pauli_y() { return {{cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0)}}; }
Mat2 pauli_z() { return {{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(-1, 0)}}; }
Mat2 identity2() { return {{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)}}; }

TwoQubitOperator TwoQubitOperator::operator*(const TwoQubitOperator& o) const {
  TwoQubitOperator out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += (*this)(i, k) * o(k, j);
      out(i, j) = acc;
    }
  return out;
}

TwoQubitOperator TwoQubitOperator::operator-(const TwoQubitOperator& o) const {
  TwoQubitOperator out;
  for (std::size_t i = 0; i < 16; ++i) out.m[i] = m[i] - o.m[i];
  return out;
}

TwoQubitOperator TwoQubitOperator::adjoint() const {
  TwoQubitOperator out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = std::conj((*this)(j, i));
  return out;
}

double TwoQubitOperator::hermiticity_defect() const {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

double TwoQubitOperator::max_abs_diff(const TwoQubitOperator& o) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < 16; ++i)
    worst = std::max(worst, std::abs(m[i] - o.m[i]));
  return worst;
}

TwoQubitOperator TwoQubitOperator::identity() {
  TwoQubitOperator out;
  for (int i = 0; i < 4; ++i) out(i, i) = 1.0;
  return out;
}

TwoQubitOperator kron(const Mat2& a, const Mat2& b) {
  TwoQubitOperator out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out(i * 2 + k, j * 2 + l) = a(i, j) * b(k, l);
  return out;
}

TwoQubitOperator commutator(const TwoQubitOperator& a, const TwoQubitOperator& b) {
  return a * b - b * a;
}

std::array<cplx, 2> QubitState::amplitudes() const {
  return {cplx(std::cos(theta), 0.0),
          std::sin(theta) * std::exp(cplx(0.0, phi))};
}

double QubitState::bloch_x() const { return std::sin(2.0 * theta) * std::cos(phi); }
double QubitState::bloch_y() const { return std::sin(2.0 * theta) * std::sin(phi); }
double QubitState::bloch_z() const { return std::cos(2.0 * theta); }

StateVector4 product_state(const QubitState& s1, const QubitState& s2) {
  const auto a = s1.amplitudes();
  const auto b = s2.amplitudes();
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

double expectation(const QubitState& s1, const QubitState& s2,
                   const TwoQubitOperator& obs) {
  if (!obs.is_hermitian(kAlgebraTol))
    throw std::domain_error("expectation: observable is not Hermitian");
  const auto psi = product_state(s1, s2);
  cplx acc = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      acc += std::conj(psi[static_cast<std::size_t>(i)]) * obs(i, j) *
             psi[static_cast<std::size_t>(j)];
  if (std::abs(acc.imag()) > kAlgebraTol)
    throw std::logic_error("expectation: residual imaginary part too large");
  return acc.real();
}

ObservableSet observables(MeasurementAssignment assignment) {
  const Mat2 X = pauli_x(), Y = pauli_y(), I = identity2();
  ObservableSet s;
  if (assignment == MeasurementAssignment::MsCompatible) {
    s.alpha1 = kron(X, I);
    s.alpha2 = kron(I, Y);
    s.beta1 = kron(Y, I);
    s.beta2 = kron(I, X);
    s.a = kron(X, Y);
    s.b = kron(Y, X);
  } else {
    s.alpha1 = kron(X, I);
    s.alpha2 = kron(I, X);
    s.beta1 = kron(Y, I);
    s.beta2 = kron(I, Y);
    s.a = kron(X, X);
    s.b = kron(Y, Y);
  }
  s.ab = s.a * s.b;
  return s;
}

namespace {

StateVector4 apply(const TwoQubitOperator& op, const StateVector4& v) {
  StateVector4 out{};
  for (int i = 0; i < 4; ++i) {
    cplx acc = 0.0;
    for (int j = 0; j < 4; ++j) acc += op(i, j) * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

cplx inner(const StateVector4& a, const StateVector4& b) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

// Reads the eigenvalue of `op` on `v` and verifies v really is an
// eigenvector with that +/-1 eigenvalue.
int eigenlabel(const TwoQubitOperator& op, const StateVector4& v) {
  const auto w = apply(op, v);
  const double ev = inner(v, w).real();
  const int label = ev >= 0.0 ? +1 : -1;
  for (std::size_t i = 0; i < 4; ++i)
    if (std::abs(w[i] - static_cast<double>(label) * v[i]) > kAlgebraTol)
      throw std::logic_error("joint basis: vector is not a +/-1 eigenvector");
  return label;
}

MeasurementBasis labelled_basis(const std::array<StateVector4, 4>& vectors,
                                const ObservableSet& obs) {
  MeasurementBasis basis;
  basis.vectors = vectors;
  bool seen[2][2] = {{false, false}, {false, false}};
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t l = 0; l < k; ++l)
      if (std::abs(inner(vectors[k], vectors[l])) > kAlgebraTol)
        throw std::logic_error("joint basis: vectors not orthogonal");
    if (std::abs(inner(vectors[k], vectors[k]) - 1.0) > kAlgebraTol)
      throw std::logic_error("joint basis: vector not normalized");
    basis.label_a[k] = eigenlabel(obs.a, vectors[k]);
    basis.label_b[k] = eigenlabel(obs.b, vectors[k]);
    basis.label_ab[k] = eigenlabel(obs.ab, vectors[k]);
    if (basis.label_a[k] * basis.label_b[k] != basis.label_ab[k])
      throw std::logic_error("joint basis: labels break A*B = AB");
    bool& slot = seen[basis.label_a[k] < 0][basis.label_b[k] < 0];
    if (slot) throw std::logic_error("joint basis: duplicate outcome labels");
    slot = true;
  }
  return basis;
}

}  // namespace

MeasurementBasis ms_basis() {
  const double r = 1.0 / std::numbers::sqrt2;
  const cplx i(0.0, 1.0);
  const std::array<StateVector4, 4> vectors = {{
      {r, 0.0, 0.0, r * i},    // (|00> + i|11>)/sqrt2
      {r * i, 0.0, 0.0, r},    // (|11> + i|00>)/sqrt2
      {0.0, r, -r * i, 0.0},   // (|01> - i|10>)/sqrt2
      {0.0, -r * i, r, 0.0},   // (|10> - i|01>)/sqrt2
  }};
  return labelled_basis(vectors, observables(MeasurementAssignment::MsCompatible));
}

MeasurementBasis bell_basis() {
  const double r = 1.0 / std::numbers::sqrt2;
  const std::array<StateVector4, 4> vectors = {{
      {r, 0.0, 0.0, r},
      {r, 0.0, 0.0, -r},
      {0.0, r, r, 0.0},
      {0.0, r, -r, 0.0},
  }};
  return labelled_basis(vectors, observables(MeasurementAssignment::BellCompatible));
}

MeasurementBasis joint_basis(MeasurementAssignment assignment) {
  return assignment == MeasurementAssignment::MsCompatible ? ms_basis()
                                                           : bell_basis();
}

SettingTables born_tables(const QubitState& s1, const QubitState& s2,
                          MeasurementAssignment assignment) {
  const bool ms = assignment == MeasurementAssignment::MsCompatible;
  // Local settings factorize over the product state. Under MsCompatible the
  // alpha setting measures X on qubit 1 and Y on qubit 2; under
  // BellCompatible both alphas are X and both betas are Y.
  const double a1 = s1.bloch_x();
  const double a2 = ms ? s2.bloch_y() : s2.bloch_x();
  const double b1 = s1.bloch_y();
  const double b2 = ms ? s2.bloch_x() : s2.bloch_y();

  SettingTables t;
  for (int q : {+1, -1})
    for (int r : {+1, -1}) {
      t.alpha.set_cell(q, r, 0.25 * (1.0 + q * a1) * (1.0 + r * a2));
      t.beta.set_cell(q, r, 0.25 * (1.0 + q * b1) * (1.0 + r * b2));
    }

  const auto basis = joint_basis(assignment);
  const auto psi = product_state(s1, s2);
  for (std::size_t k = 0; k < 4; ++k) {
    const double p = std::norm(inner(basis.vectors[k], psi));
    t.joint.set_cell(basis.label_a[k], basis.label_b[k], p);
  }
  return t;
}

Behavior behavior_of_states(const QubitState& s1, const QubitState& s2,
                            MeasurementAssignment assignment) {
  const auto tables = born_tables(s1, s2, assignment);
  Behavior b;
  b.alpha1 = tables.alpha.mean_first();
  b.alpha2 = tables.alpha.mean_second();
  b.beta1 = tables.beta.mean_first();
  b.beta2 = tables.beta.mean_second();
  b.corr_ab = tables.joint.correlation();
  b.mean_a = tables.joint.mean_first();
  b.mean_b = tables.joint.mean_second();
  b.tables = tables;
  return b;
}

Behavior ideal_behavior(double theta, double phi,
                        MeasurementAssignment assignment) {
  const QubitState s{theta, phi};
  return behavior_of_states(s, s, assignment);
}

const char* to_string(Setting s) {
  switch (s) {
    case Setting::AlphaLocal: return "alpha";
    case Setting::BetaLocal: return "beta";
    case Setting::JointMS: return "joint";
  }
  return "?";
}

OutcomeCounts sample_setting(const QubitState& s1, const QubitState& s2,
                             Setting setting, std::uint64_t shots,
                             std::uint64_t seed) {
  if (shots < 1)
    throw std::invalid_argument("sample_setting: shots must be >= 1");
  const auto tables = born_tables(s1, s2, MeasurementAssignment::MsCompatible);
  const PairDistribution* table = nullptr;
  switch (setting) {
    case Setting::AlphaLocal: table = &tables.alpha; break;
    case Setting::BetaLocal: table = &tables.beta; break;
    case Setting::JointMS: table = &tables.joint; break;
  }
  const auto probs = table->cells();
  rng::Stream stream(seed, static_cast<std::uint64_t>(setting));
  OutcomeCounts out;
  out.setting = setting;
  out.shots = shots;
  for (std::uint64_t n = 0; n < shots; ++n)
    ++out.counts[static_cast<std::size_t>(stream.sample4(probs))];
  return out;
}

bool MerminPeresReport::pass(double tol) const {
  const std::array<int, 3> want_rows = {+1, +1, +1};
  const std::array<int, 3> want_cols = {+1, +1, -1};
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (row_sign[k] != want_rows[k] || row_product_defect[k] > tol) return false;
    if (col_sign[k] != want_cols[k] || col_product_defect[k] > tol) return false;
  }
  return max_commutator <= tol;
}

MerminPeresReport verify_mermin_peres() {
  const Mat2 X = pauli_x(), Y = pauli_y(), Z = pauli_z(), I = identity2();
  const std::array<std::array<TwoQubitOperator, 3>, 3> square = {{
      {kron(X, I), kron(I, X), kron(X, X)},
      {kron(I, Y), kron(Y, I), kron(Y, Y)},
      {kron(X, Y), kron(Y, X), kron(Z, Z)},
  }};
  MerminPeresReport rep;
  rep.labels = {{{"X.I", "I.X", "X.X"},
                 {"I.Y", "Y.I", "Y.Y"},
                 {"X.Y", "Y.X", "Z.Z"}}};
  // Contexts of the bi-contextuality scenario inside the square: the two
  // local settings are columns 1 and 2, the joint setting is row 3.
  rep.scenario_contexts = {{{"X.I", "I.Y", "X.Y"},
                            {"I.X", "Y.I", "Y.X"},
                            {"X.Y", "Y.X", "Z.Z"}}};

  const auto identity = TwoQubitOperator::identity();
  const auto signed_identity_defect = [&identity](const TwoQubitOperator& p,
                                                  int& sign_out) {
    const double tr = (p(0, 0) + p(1, 1) + p(2, 2) + p(3, 3)).real();
    const int sign = tr >= 0.0 ? +1 : -1;
    TwoQubitOperator target = identity;
    for (auto& v : target.m) v *= static_cast<double>(sign);
    sign_out = sign;
    return p.max_abs_diff(target);
  };

  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const auto& row = square[k];
    const auto row_prod = row[0] * row[1] * row[2];
    rep.row_product_defect[k] = signed_identity_defect(row_prod, rep.row_sign[k]);
    const auto col_prod =
        square[0][k] * square[1][k] * square[2][k];
    rep.col_product_defect[k] = signed_identity_defect(col_prod, rep.col_sign[k]);
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        const auto ka = static_cast<std::size_t>(a);
        const auto kb = static_cast<std::size_t>(b);
        rep.max_commutator =
            std::max(rep.max_commutator,
                     commutator(row[ka], row[kb]).max_abs_diff({}));
        rep.max_commutator =
            std::max(rep.max_commutator,
                     commutator(square[ka][k], square[kb][k]).max_abs_diff({}));
      }
  }
  return rep;
}

}  // namespace bictx
