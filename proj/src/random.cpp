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

#include "covnot/random.hpp"

#include <cmath>

#include "covnot/operator_core.hpp"

namespace covnot {

RngState::RngState(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32),
                    0x636f766eu};
  engine_.seed(seq);
}

Operator4 LocalUnitaryPair::joint() const { return tensor_product(u1, u2); }

Operator2 haar_su2(RngState& rng) {
  double a, b, c, d, norm;
  do {
    a = rng.normal();
    b = rng.normal();
    c = rng.normal();
    d = rng.normal();
    norm = std::sqrt(a * a + b * b + c * c + d * d);
  } while (norm < 1e-300);
  a /= norm;
  b /= norm;
  c /= norm;
  d /= norm;
  Operator2 u;
  u << Complex(a, b), Complex(c, d), Complex(-c, d), Complex(a, -b);
  return u;
}

LocalUnitaryPair haar_local_pair(RngState& rng) {
  LocalUnitaryPair p;
  p.u1 = haar_su2(rng);
  p.u2 = haar_su2(rng);
  return p;
}

Operator4 random_density_operator(RngState& rng) {
  Operator4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = rng.complex_normal();
  Operator4 rho = g * g.adjoint();
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return rho / rho.trace().real();
}

Operator2 random_hermitian2(RngState& rng) {
  Operator2 g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = rng.complex_normal();
  return (g + g.adjoint()) / 2.0;
}

Operator4 haar_u4(RngState& rng) {
  Operator4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Operator4> qr(g);
  Operator4 q = qr.householderQ();
  const Operator4 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 4; ++k) {
    const Complex rkk = r(k, k);
    const double mag = std::abs(rkk);
    if (mag > 0.0) q.col(k) *= rkk / mag;
  }
  return q;
}

}  // namespace covnot
