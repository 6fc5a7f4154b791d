// Copyright 2026 The covnot Authors
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

#include "covnot/operator_core.hpp"

#include <cmath>
#include <sstream>

#include "covnot/error.hpp"

namespace covnot {

namespace {

constexpr Complex kI{0.0, 1.0};

std::array<Operator2, 4> make_paulis() {
  std::array<Operator2, 4> s;
  s[0] << 1, 0, 0, 1;
  s[1] << 0, 1, 1, 0;
  s[2] << 0, -kI, kI, 0;
  s[3] << 1, 0, 0, -1;
  return s;
}

}  // namespace

namespace pauli {

const Operator2& sigma(int index) {
  static const std::array<Operator2, 4> paulis = make_paulis();
  return paulis.at(static_cast<std::size_t>(index));
}

const Operator4& product(int a, int b) {
  static const std::array<Operator4, 16> products = [] {
    std::array<Operator4, 16> out;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        out[static_cast<std::size_t>(4 * i + j)] =
            tensor_product(sigma(i), sigma(j));
    return out;
  }();
  return products.at(static_cast<std::size_t>(4 * a + b));
}

}  // namespace pauli

Operator4 tensor_product(const Operator2& a, const Operator2& b) {
  Operator4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

bool is_hermitian(const Operator4& op, double tol) {
  return max_abs_diff(op, op.adjoint()) <= tol;
}

bool is_unitary(const Operator4& op, double tol) {
  return max_abs_diff(op * op.adjoint(), Operator4::Identity()) <= tol;
}

Eigen::Vector4d hermitian_eigenvalues(const Operator4& op) {
  Eigen::SelfAdjointEigenSolver<Operator4> solver(op, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double max_abs_diff(const Operator4& a, const Operator4& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

//=========================================================================
// States
//=========================================================================

PureTwoQubitState::PureTwoQubitState(const Ket4& amplitudes)
    : amplitudes_(amplitudes) {
  if (!amplitudes.allFinite())
    throw InvalidArgument("state amplitudes must be finite");
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << "state is not normalized: |psi| = " << norm;
    throw InvalidArgument(msg.str());
  }
}

PureTwoQubitState PureTwoQubitState::normalized(const Ket4& amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw InvalidArgument("cannot normalize a zero or non-finite vector");
  return PureTwoQubitState(amplitudes / norm);
}

PureTwoQubitState PureTwoQubitState::canonical(double alpha) {
  if (!(alpha >= -1.0 && alpha <= 1.0))
    throw OutOfRange("alpha must lie in [-1, 1]");
  Ket4 v = Ket4::Zero();
  v(0) = alpha;
  v(3) = std::sqrt(1.0 - alpha * alpha);
  return PureTwoQubitState::normalized(v);
}

DensityMatrix::DensityMatrix(const Operator4& op) : op_(op) {
  if (!op.allFinite()) throw InvalidArgument("density matrix must be finite");
  if (!is_hermitian(op))
    throw InvalidArgument("density matrix is not Hermitian");
  const Complex tr = op.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr.real() << ", expected 1";
    throw InvalidArgument(msg.str());
  }
  const double lowest = hermitian_eigenvalues(op)(0);
  if (lowest < kEigenFloor) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << lowest;
    throw InvalidArgument(msg.str());
  }
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Operator4::Identity() / 4.0);
}

DensityMatrix DensityMatrix::pure(const PureTwoQubitState& psi) {
  return DensityMatrix(psi.projector());
}

//=========================================================================
// Coherence form
//=========================================================================

CoherenceForm to_coherence_form(const DensityMatrix& rho) {
  return to_coherence_form(rho.op());
}

CoherenceForm to_coherence_form(const Operator4& op) {
  // Tr[A B] without forming the product.
  const auto trace_with = [&op](const Operator4& p) {
    return (p.transpose().cwiseProduct(op)).sum().real();
  };
  CoherenceForm c;
  for (int i = 0; i < 3; ++i) {
    c.P(i) = trace_with(pauli::product(i + 1, 0));
    c.Q(i) = trace_with(pauli::product(0, i + 1));
    for (int j = 0; j < 3; ++j) c.M(i, j) = trace_with(pauli::product(i + 1, j + 1));
  }
  return c;
}

Operator4 from_coherence_form(const CoherenceForm& c) {
  Operator4 out = pauli::product(0, 0);
  for (int i = 0; i < 3; ++i) {
    out += c.P(i) * pauli::product(i + 1, 0);
    out += c.Q(i) * pauli::product(0, i + 1);
    for (int j = 0; j < 3; ++j) out += c.M(i, j) * pauli::product(i + 1, j + 1);
  }
  return out / 4.0;
}

//=========================================================================
// Tensor components
//=========================================================================

const TensorComponentSet& tensor_component_set() {
  static const TensorComponentSet set = [] {
    const Operator2& sx = pauli::sigma(1);
    const Operator2& sy = pauli::sigma(2);
    const Operator2& sz = pauli::sigma(3);
    TensorComponentSet s;
    s[0] = {0, 0, pauli::sigma(0) / std::sqrt(2.0)};
    s[1] = {1, 1, -(sx + kI * sy) / 2.0};
    s[2] = {1, 0, std::sqrt(2.0) * sz / 2.0};
    s[3] = {1, -1, (sx - kI * sy) / 2.0};
    return s;
  }();
  return set;
}

//=========================================================================
// Magic basis
//=========================================================================

const std::array<Ket4, 4>& magic_basis() {
  static const std::array<Ket4, 4> basis = [] {
    const double h = 1.0 / std::sqrt(2.0);
    std::array<Ket4, 4> e;
    e[0] << h, 0, 0, h;
    e[1] << kI * h, 0, 0, -kI * h;
    e[2] << 0, kI * h, kI * h, 0;
    e[3] << 0, h, -h, 0;
    return e;
  }();
  return basis;
}

const Operator4& magic_to_computational() {
  static const Operator4 m = [] {
    Operator4 out;
    for (int i = 0; i < 4; ++i)
      out.col(i) = magic_basis()[static_cast<std::size_t>(i)];
    return out;
  }();
  return m;
}

Ket4 magic_coefficients(const Ket4& psi) {
  return magic_to_computational().adjoint() * psi;
}

double concurrence(const PureTwoQubitState& psi) {
  const Ket4 g = magic_coefficients(psi.amplitudes());
  return std::abs((g.array() * g.array()).sum());
}

PureTwoQubitState random_pure_state(double alpha, RngState& rng) {
  if (!(alpha >= 0.0 && alpha <= 1.0 / std::sqrt(2.0) + 1e-15))
    throw OutOfRange("alpha must lie in [0, 1/sqrt(2)]");
  const LocalUnitaryPair u = haar_local_pair(rng);
  return PureTwoQubitState::normalized(
      u.joint() * PureTwoQubitState::canonical(alpha).amplitudes());
}

}  // namespace covnot
