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

// Helpers shared by the test binaries.

#pragma once

#include <array>
#include <cmath>

#include "covnot/channel.hpp"
#include "covnot/operator_core.hpp"
#include "covnot/random.hpp"

namespace test_support {

// Uniform point of the CP tetrahedron via random barycentric weights.
inline covnot::ChannelParams random_cp_params(covnot::RngState& rng) {
  double w[4];
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  const covnot::ChannelParams c[4] = {covnot::corners::D, covnot::corners::B, covnot::corners::A, covnot::corners::C};
  covnot::ChannelParams p{0, 0, 0};
  for (int k = 0; k < 4; ++k) {
    p.V += w[k] / total * c[k].V;
    p.X += w[k] / total * c[k].X;
    p.Y += w[k] / total * c[k].Y;
  }
  return p;
}

inline covnot::Operator4 pauli_weighted_kraus(const std::array<double, 4>& l, const covnot::Operator4& rho) {
  // l = (identity, sigma_i (x) I, I (x) sigma_i, sigma_i (x) sigma_j).
  covnot::Operator4 out = l[0] * rho;
  for (int i = 1; i < 4; ++i) {
    const covnot::Operator4 a = covnot::tensor_product(covnot::pauli::sigma(i), covnot::pauli::sigma(0));
    const covnot::Operator4 b = covnot::tensor_product(covnot::pauli::sigma(0), covnot::pauli::sigma(i));
    out += l[1] * a * rho * a.adjoint() + l[2] * b * rho * b.adjoint();
    for (int j = 1; j < 4; ++j) {
      const covnot::Operator4 c = covnot::tensor_product(covnot::pauli::sigma(i), covnot::pauli::sigma(j));
      out += l[3] * c * rho * c.adjoint();
    }
  }
  return out;
}

}  // namespace test_support
