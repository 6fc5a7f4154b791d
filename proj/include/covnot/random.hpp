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

#include <cstdint>
#include <random>

#include "covnot/types.hpp"

namespace covnot {

/// Reproducible random stream keyed by (seed, stream). Two states built from
/// the same key produce bit-identical draws; parallel tasks take distinct
/// stream ids instead of sharing one engine.
class RngState {
 public:
  explicit RngState(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// A fresh state on stream `stream` with this state's seed.
  RngState fork(std::uint64_t stream) const { return RngState(seed_, stream); }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Pair of SU(2) elements acting as U1 (x) U2.
struct LocalUnitaryPair {
  Operator2 u1;
  Operator2 u2;

  Operator4 joint() const;
};

/// Haar-distributed SU(2) element from a unit quaternion built out of four
/// independent standard normals.
Operator2 haar_su2(RngState& rng);

LocalUnitaryPair haar_local_pair(RngState& rng);

/// Full-rank random density matrix G G^dag / Tr(G G^dag) with G Ginibre.
Operator4 random_density_operator(RngState& rng);

/// Random 2x2 Hermitian operator with Gaussian entries (no trace constraint).
Operator2 random_hermitian2(RngState& rng);

/// Haar-random U(4) element (QR of a Ginibre matrix with phase fix).
Operator4 haar_u4(RngState& rng);

}  // namespace covnot
