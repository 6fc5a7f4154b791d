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
#include <vector>

#include "covnot/operator_core.hpp"
#include "covnot/random.hpp"
#include "covnot/types.hpp"

namespace covnot {

/// Scale factors of the covariant channel: the first-qubit Bloch vector is
/// multiplied by V, the second by X and the correlation tensor by Y.
struct ChannelParams {
  double V = 1.0;
  double X = 1.0;
  double Y = 1.0;

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

struct CpReport {
  bool is_cp = false;
  /// 1+3X+3V+9Y, 1+3X-V-3Y, 1-X+3V-3Y, 1-X-V+Y.
  std::array<double, 4> margins{};
};

CpReport cp_check(const ChannelParams& p);

/// The affine margins above, without the verdict.
std::array<double, 4> cp_margins(const ChannelParams& p);

//=========================================================================
// Kraus representation
//=========================================================================

struct KrausTerm {
  double weight = 0.0;
  Operator4 op = Operator4::Zero();
};

/// Channel rho -> sum_k w_k L_k rho L_k^dag.
class KrausSet {
 public:
  KrausSet() = default;
  explicit KrausSet(std::vector<KrausTerm> terms);

  const std::vector<KrausTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// sum_k w_k L_k^dag L_k.
  Operator4 completeness() const;

  /// Largest entry of |completeness() - I|.
  double trace_defect() const;

  Operator4 apply(const Operator4& rho) const;

  ChannelFn as_function() const;

 private:
  std::vector<KrausTerm> terms_;
};

/// Kraus set of sixteen Pauli products sigma_i (x) sigma_j
/// (i, j = 0..3) with weights l_00 = (1+3X+3V+9Y)/16,
/// l_i0 = (1+3X-V-3Y)/16 on sigma_i (x) I, l_0i = (1+3V-X-3Y)/16 on
/// I (x) sigma_i and l_ij = (1-X-V+Y)/16.
/// Throws NotCompletelyPositive when a margin is below -1e-10.
KrausSet kraus_set(const ChannelParams& p);

/// The four distinct weights (l_00, l_i0, l_0i, l_ij) without the CP check.
std::array<double, 4> kraus_weights(const ChannelParams& p);

//=========================================================================
// Application
//=========================================================================

/// Coherence-form route: rho(P, Q, M) -> rho(V P, X Q, Y M).
/// Throws NotCompletelyPositive for non-CP triples.
DensityMatrix apply(const ChannelParams& p, const DensityMatrix& rho);

/// Kraus-sum route; same CP precondition.
DensityMatrix apply_kraus(const ChannelParams& p, const DensityMatrix& rho);

/// The linear map extended to arbitrary complex 4x4 operators (Pauli
/// coefficients rescaled). No CP check; defined for every triple.
Operator4 apply_linear(const ChannelParams& p, const Operator4& op);

ChannelFn as_function(const ChannelParams& p);

//=========================================================================
// Choi matrix
//=========================================================================

struct ChoiMatrix {
  Matrix16c matrix;

  /// Ascending.
  Eigen::Matrix<double, 16, 1> eigenvalues() const;
  double min_eigenvalue() const { return eigenvalues()(0); }
};

/// J = sum_ij Pi(P_ij) (x) P_ij with P_ij = |i><j| in the computational
/// basis, unnormalized (trace 4 for trace-preserving maps).
ChoiMatrix choi_matrix(const ChannelParams& p);

/// Closed-form distinct eigenvalues of choi_matrix(p), in margin order:
/// margins / 4.
std::array<double, 4> choi_spectrum_closed_form(const ChannelParams& p);

/// Multiplicities of the closed-form eigenvalues above.
inline constexpr std::array<int, 4> kChoiMultiplicities{1, 3, 3, 9};

//=========================================================================
// Convex corner decomposition
//=========================================================================

struct ConvexWeights {
  double a1 = 0.0;  // identity (D)
  double a2 = 0.0;  // U_SEP (B)
  double a3 = 0.0;  // U_ME^(1) (A)
  double a4 = 0.0;  // U_ME^(2) (C)

  double sum() const { return a1 + a2 + a3 + a4; }
  double min() const;
};

namespace corners {
inline constexpr ChannelParams A{1.0, -1.0 / 3.0, -1.0 / 3.0};
inline constexpr ChannelParams B{-1.0 / 3.0, -1.0 / 3.0, 1.0 / 9.0};
inline constexpr ChannelParams C{-1.0 / 3.0, 1.0, -1.0 / 3.0};
inline constexpr ChannelParams D{1.0, 1.0, 1.0};
}  // namespace corners

/// Barycentric coordinates of p with respect to D, B, A, C via a 4x4 linear
/// solve. Non-CP triples give negative weights.
ConvexWeights convex_decompose(const ChannelParams& p);

/// a1 D + a2 B + a3 A + a4 C.
ChannelParams reconstruct(const ConvexWeights& w);

//=========================================================================
// Parameter extraction from a black box
//=========================================================================

struct ExtractedParams {
  ChannelParams params;
  /// Largest entry deviation between the black box and Pi_{V,X,Y} over the
  /// random residual states.
  double residual = 0.0;
};

/// Probes the box with (I + sz x I)/4, (I + I x sz)/4, (I + sz x sz)/4 and
/// reads V, X, Y from the z components of the outputs; then compares
/// against apply_linear on `trials` random density matrices. Throws
/// NotCovariant when the residual exceeds `tol`.
ExtractedParams extract_params(const ChannelFn& box, RngState& rng,
                               double tol = 1e-8, int trials = 20);

}  // namespace covnot
