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
#include <string>
#include <string_view>
#include <vector>

#include "covnot/channel.hpp"
#include "covnot/operator_core.hpp"
#include "covnot/types.hpp"

namespace covnot {

/// Degree of entanglement of the orbit of alpha|uu> + beta|dd>.
class EntanglementClass {
 public:
  /// Throws OutOfRange unless 0 <= alpha <= 1/sqrt2.
  explicit EntanglementClass(double alpha);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  /// alpha^2 beta^2, in [0, 1/4].
  double s() const noexcept { return alpha_ * alpha_ * beta_ * beta_; }

 private:
  double alpha_;
  double beta_;
};

inline constexpr double kMaxAlpha = 0.70710678118654752440;

//=========================================================================
// Error measure
//=========================================================================

/// 2<phi|rho^2|phi> - (2/3)<phi|rho|phi>^2: the squared Hilbert-Schmidt
/// distance from rho to the closest state supported on phi's complement.
double distance_to_complement(const Operator4& rho, const Ket4& phi);
double distance_to_complement(const DensityMatrix& rho,
                              const PureTwoQubitState& phi);

/// Same distance obtained by constructing the minimizing sigma explicitly:
/// diagonalize rho on phi's complement, put weight beta_i + <phi|rho|phi>/3
/// on each eigenvector and return Tr(rho - sigma)^2.
double min_distance_oracle(const Operator4& rho, const Ket4& phi);
double min_distance_oracle(const DensityMatrix& rho,
                           const PureTwoQubitState& phi);

/// Closed-form NOT error of Pi_{V,X,Y} on the class alpha, Z = V + X:
/// (1/12){[1 + Z(1-4s) + Y(1+8s)]^2 + 6s(1-4s)(Z-2Y)^2}, s = alpha^2 beta^2.
double covariant_error(double Z, double Y, double alpha);

//=========================================================================
// Optimal covariant NOT
//=========================================================================

enum class OptimalFamily { SepPoint, LineSegment, MeLine, InteriorRegression };

std::string_view to_string(OptimalFamily f);

struct ErrorReport {
  double delta = 0.0;
  ChannelParams point;
  OptimalFamily family = OptimalFamily::SepPoint;
  /// Range of V over the optimal set (equal ends for a single point).
  double v_min = 0.0;
  double v_max = 0.0;
};

/// Branch point: sqrt((1 - sqrt(1 - 4K))/2), K = (8 - 3 sqrt6)/20.
double alpha0();

/// Maximum of the optimal error: sqrt(1/2 - sqrt(3/20)).
double alpha_max();

/// Closed-form optimum. alpha <= alpha0: U_SEP point (-1/3, -1/3, 1/9).
/// alpha > alpha0: the line Y = Y_min(s), X + V = -3Y - 1/3, reported at
/// X = V = Z/2. Throws OutOfRange outside [0, 1/sqrt2].
ErrorReport optimal_not(double alpha);

struct NumericalOptimum {
  ErrorReport report;
  double grid_delta = 0.0;
  ChannelParams grid_point;
  std::size_t grid_points = 0;
  /// Bit k set when margin k was treated as active during refinement.
  unsigned active_mask = 0;
  /// Largest violation of the first-order optimality test (<= 0 is optimal).
  double kkt_violation = 0.0;
};

/// Independent minimization of covariant_error over the CP tetrahedron:
/// full grid (spacing <= 0.02 in V, X, Y), then exact quadratic
/// minimization over the faces of the facets active at the grid minimum,
/// with a first-order optimality test against the tetrahedron's vertices
/// (falling back to every face when the test fails).
NumericalOptimum numerical_optimal_not(double alpha);

//=========================================================================
// Perfect NOT operators for maximally entangled states
//=========================================================================

using IntMatrix4 = std::array<std::array<int, 4>, 4>;

enum class NotFamily { U, V };

/// The six real antisymmetric generators in the magic basis: U_1..U_3 and
/// V_1..V_3 exactly as printed (entries 0, +-1).
const std::array<IntMatrix4, 3>& magic_generators(NotFamily family);

struct MagicNotOperator {
  std::array<double, 3> coeffs{};
  NotFamily family = NotFamily::U;
  Eigen::Matrix4d magic;      // real antisymmetric, magic basis
  Operator4 computational;    // same operator on |uu>, |ud>, |du>, |dd>
};

/// sum_i c_i U_i or sum_i c_i V_i. Throws NonUnitNorm unless |c| = 1 within
/// 1e-12.
MagicNotOperator perfect_not_magic(const std::array<double, 3>& coeffs,
                                   NotFamily family);

/// Overload taking both coefficient sets; exactly one must be nonzero
/// (MixedFamilies otherwise).
MagicNotOperator perfect_not_magic(const std::array<double, 3>& u_coeffs,
                                   const std::array<double, 3>& v_coeffs);

struct AlgebraRelation {
  std::string name;
  int checked = 0;
  int failed = 0;
  bool holds() const { return failed == 0; }
};

struct MagicAlgebraReport {
  std::vector<AlgebraRelation> relations;
  bool all_hold() const;
};

/// Checks, in integer arithmetic on the printed generators:
/// {A_i, A_j^T} = 2 delta_ij I, -{A_i, A_j} = 2 delta_ij I, A_i^T = -A_i,
/// A_i A_j = -delta_ij I + eps_ijk A_k for A in {U, V}, and [U_i, V_j] = 0.
MagicAlgebraReport magic_algebra_check();

//=========================================================================
// Named channels
//=========================================================================

/// One-qubit optimal U-NOT u(A) = (2 Tr(A) I - A)/3 (linear extension of
/// (2I - rho)/3).
struct OneQubitUnot {
  Operator2 apply(const Operator2& a) const;
};

/// (u (x) u)(op), evaluated factor by factor on the Pauli expansion of op.
Operator4 apply_factorwise(const OneQubitUnot& u1, const OneQubitUnot& u2,
                           const Operator4& op);

ChannelParams u_sep();   // (-1/3, -1/3, 1/9)
ChannelParams g_not();   // (-1/15, -1/15, -1/15)
/// (V, 2/3 - V, -1/3); OutOfRange unless -1/3 <= V <= 1.
ChannelParams u_me(double v);

}  // namespace covnot
