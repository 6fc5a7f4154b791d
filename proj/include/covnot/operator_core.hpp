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

#pragma once

#include <array>

#include "covnot/random.hpp"
#include "covnot/types.hpp"

namespace covnot {

//=========================================================================
// Pauli algebra
//=========================================================================

namespace pauli {

/// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
const Operator2& sigma(int index);

/// sigma_a (x) sigma_b for a, b in 0..3.
const Operator4& product(int a, int b);

}  // namespace pauli

Operator4 tensor_product(const Operator2& a, const Operator2& b);

bool is_hermitian(const Operator4& op, double tol = kHermitianTol);
bool is_unitary(const Operator4& op, double tol = kNormTol);

/// Ascending eigenvalues of a Hermitian operator (only the lower triangle is
/// read).
Eigen::Vector4d hermitian_eigenvalues(const Operator4& op);

/// Largest entry modulus of a - b.
double max_abs_diff(const Operator4& a, const Operator4& b);

//=========================================================================
// States
//=========================================================================

class PureTwoQubitState {
 public:
  /// Throws InvalidArgument unless |amplitudes| = 1 within 1e-12.
  explicit PureTwoQubitState(const Ket4& amplitudes);

  static PureTwoQubitState normalized(const Ket4& amplitudes);

  /// alpha|uu> + sqrt(1 - alpha^2)|dd>.
  static PureTwoQubitState canonical(double alpha);

  const Ket4& amplitudes() const noexcept { return amplitudes_; }
  Operator4 projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  Ket4 amplitudes_;
};

class DensityMatrix {
 public:
  /// Throws InvalidArgument unless the operator is Hermitian, has unit trace
  /// and no eigenvalue below -1e-10.
  explicit DensityMatrix(const Operator4& op);

  static DensityMatrix maximally_mixed();
  static DensityMatrix pure(const PureTwoQubitState& psi);

  const Operator4& op() const noexcept { return op_; }

 private:
  Operator4 op_;
};

/// Local Bloch vectors P, Q and correlation tensor M of a two-qubit operator.
struct CoherenceForm {
  Eigen::Vector3d P = Eigen::Vector3d::Zero();
  Eigen::Vector3d Q = Eigen::Vector3d::Zero();
  Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
};

/// P_i = Tr[rho (s_i x I)], Q_i = Tr[rho (I x s_i)], M_ij = Tr[rho (s_i x s_j)].
CoherenceForm to_coherence_form(const DensityMatrix& rho);

/// Same map for any Hermitian operator; imaginary parts of the traces are
/// dropped.
CoherenceForm to_coherence_form(const Operator4& op);

/// (1/4)(I x I + sum P_i s_i x I + sum Q_i I x s_i + sum M_ij s_i x s_j).
/// Positivity is not checked.
Operator4 from_coherence_form(const CoherenceForm& c);

//=========================================================================
// Irreducible tensor components of a single qubit
//=========================================================================

struct TensorComponent {
  int rank;  // K
  int q;
  Operator2 op;
};

using TensorComponentSet = std::array<TensorComponent, 4>;

/// T_{00} = I/sqrt2, T_{11} = -(sx + i sy)/2, T_{10} = sz/sqrt2,
/// T_{1,-1} = (sx - i sy)/2.
const TensorComponentSet& tensor_component_set();

//=========================================================================
// Magic basis and concurrence
//=========================================================================

/// e1 = (|uu> + |dd>)/sqrt2, e2 = i(|uu> - |dd>)/sqrt2,
/// e3 = i(|ud> + |du>)/sqrt2, e4 = (|ud> - |du>)/sqrt2.
const std::array<Ket4, 4>& magic_basis();

/// Unitary whose columns are e1..e4: maps magic coordinates to
/// computational amplitudes.
const Operator4& magic_to_computational();

/// gamma_i = <e_i|psi>.
Ket4 magic_coefficients(const Ket4& psi);

/// |sum_i gamma_i^2|.
double concurrence(const PureTwoQubitState& psi);

/// Haar-random member of the class (U1 x U2)(alpha|uu> + beta|dd>).
/// Throws OutOfRange unless 0 <= alpha <= 1/sqrt2.
PureTwoQubitState random_pure_state(double alpha, RngState& rng);

}  // namespace covnot
