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

#include <cstddef>

#include "covnot/channel.hpp"
#include "covnot/random.hpp"
#include "covnot/types.hpp"

namespace covnot {

//=========================================================================
// Pauli transfer matrices
//=========================================================================

// Index a = 4 i + j labels sigma_i (x) sigma_j. R(a, b) = Tr[P_a F(P_b)] / 4.

/// Transfer matrix of a black-box linear map. The box is only ever called on
/// density matrices: I/4 and (I + P_b)/4.
Matrix16d transfer_matrix(const ChannelFn& channel);

/// Transfer matrix of rho -> U rho U^dag for U = U1 (x) U2.
Matrix16d conjugation_transfer_matrix(const LocalUnitaryPair& u);

ChannelFn from_transfer_matrix(const Matrix16d& transfer);

//=========================================================================
// Covariance and twirling
//=========================================================================

struct CovarianceReport {
  double max_deviation = 0.0;
  int trials = 0;
};

/// Largest entrywise |F(U rho U^dag) - U F(rho) U^dag| over `trials` random
/// mixed states and Haar-random U = U1 (x) U2.
CovarianceReport check_covariance(const ChannelFn& channel, int trials,
                                  RngState& rng);

inline constexpr std::size_t kDefaultTwirlSamples = 100000;
inline constexpr std::size_t kDefaultTwirlTasks = 16;

struct TwirlResult {
  /// Monte-Carlo estimate of the group average, as a transfer matrix.
  Matrix16d transfer;
  ChannelFn channel;
  /// Parameters read off the averaged map; residual against Pi_{V,X,Y}.
  ExtractedParams extracted;
  CpReport cp;
  std::size_t samples = 0;
  std::size_t tasks = 0;
};

/// Monte-Carlo average of U^dag F(U rho U^dag) U over Haar U = U1 (x) U2.
/// Samples are split over `tasks` independent streams forked from `rng`
/// (stream ids are derived from rng.stream()); per-task sums are combined
/// by a pairwise tree, so the result depends only on (seed, stream,
/// samples, tasks) and not on the number of threads.
TwirlResult twirl(const ChannelFn& channel, std::size_t samples, RngState& rng,
                  std::size_t tasks = kDefaultTwirlTasks);

/// Parameter-space tolerance for Monte-Carlo estimates at the default
/// sample count.
inline constexpr double kTwirlParamTol = 1e-3;

/// True when p lies within Euclidean distance `param_tol` of every facet
/// half-space of the CP tetrahedron.
bool cp_within(const ChannelParams& p, double param_tol);

/// Random CPTP map with `rank` Kraus operators: K_k = G_k S^{-1/2} with G_k
/// Ginibre and S = sum G_k^dag G_k.
KrausSet random_kraus_set(int rank, RngState& rng);

}  // namespace covnot
