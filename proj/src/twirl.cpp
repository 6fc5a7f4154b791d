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

#include "covnot/twirl.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "covnot/error.hpp"
#include "covnot/operator_core.hpp"
#include "covnot/parallel.hpp"

namespace covnot {

namespace {

double pauli_overlap(const Operator4& p, const Operator4& op) {
  return (p.transpose().cwiseProduct(op)).sum().real();
}

Eigen::Matrix4d single_qubit_transfer(const Operator2& u) {
  Eigen::Matrix4d r;
  for (int b = 0; b < 4; ++b) {
    const Operator2 image = u * pauli::sigma(b) * u.adjoint();
    for (int a = 0; a < 4; ++a)
      r(a, b) = (pauli::sigma(a).transpose().cwiseProduct(image)).sum().real() / 2.0;
  }
  return r;
}

}  // namespace

Matrix16d transfer_matrix(const ChannelFn& channel) {
  const Operator4 mixed = Operator4::Identity() / 4.0;
  const Operator4 image_of_mixed = channel(mixed);
  Matrix16d r;
  for (int b = 0; b < 16; ++b) {
    const Operator4& pb = pauli::product(b / 4, b % 4);
    // F(P_b) = 4 F((I + P_b)/4) - 4 F(I/4), and F(I) = 4 F(I/4).
    const Operator4 image = (b == 0) ? Operator4(4.0 * image_of_mixed)
                                     : Operator4(4.0 * channel(mixed + pb / 4.0) -
                                                 4.0 * image_of_mixed);
    for (int a = 0; a < 16; ++a)
      r(a, b) = pauli_overlap(pauli::product(a / 4, a % 4), image) / 4.0;
  }
  return r;
}

Matrix16d conjugation_transfer_matrix(const LocalUnitaryPair& u) {
  const Eigen::Matrix4d r1 = single_qubit_transfer(u.u1);
  const Eigen::Matrix4d r2 = single_qubit_transfer(u.u2);
  Matrix16d r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) r(4 * i + j, 4 * k + l) = r1(i, k) * r2(j, l);
  return r;
}

ChannelFn from_transfer_matrix(const Matrix16d& transfer) {
  return [transfer](const Operator4& rho) {
    Eigen::Matrix<Complex, 16, 1> coeffs;
    for (int b = 0; b < 16; ++b) {
      const Operator4& pb = pauli::product(b / 4, b % 4);
      coeffs(b) = (pb.transpose().cwiseProduct(rho)).sum();
    }
    const Eigen::Matrix<Complex, 16, 1> out = transfer.cast<Complex>() * coeffs;
    Operator4 result = Operator4::Zero();
    for (int a = 0; a < 16; ++a)
      result += out(a) / 4.0 * pauli::product(a / 4, a % 4);
    return result;
  };
}

CovarianceReport check_covariance(const ChannelFn& channel, int trials,
                                  RngState& rng) {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  CovarianceReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const Operator4 rho = random_density_operator(rng);
    const Operator4 u = haar_local_pair(rng).joint();
    const Operator4 lhs = channel(u * rho * u.adjoint());
    const Operator4 rhs = u * channel(rho) * u.adjoint();
    report.max_deviation = std::max(report.max_deviation, max_abs_diff(lhs, rhs));
  }
  return report;
}

TwirlResult twirl(const ChannelFn& channel, std::size_t samples, RngState& rng,
                  std::size_t tasks) {
  if (samples < 1) throw InvalidArgument("samples must be at least 1");
  if (tasks < 1) throw InvalidArgument("tasks must be at least 1");
  tasks = std::min(tasks, samples);

  const Matrix16d base = transfer_matrix(channel);
  std::vector<Matrix16d> partial(tasks, Matrix16d::Zero());
  const std::uint64_t stream_base = (rng.stream() << 16) + 1;

  parallel::for_each_task(tasks, [&](std::size_t t) {
    RngState local = rng.fork(stream_base + t);
    const std::size_t begin = samples * t / tasks;
    const std::size_t end = samples * (t + 1) / tasks;
    Matrix16d sum = Matrix16d::Zero();
    for (std::size_t s = begin; s < end; ++s) {
      const Matrix16d ru = conjugation_transfer_matrix(haar_local_pair(local));
      sum.noalias() += ru.transpose() * base * ru;
    }
    partial[t] = sum;
  });

  // Pairwise tree over task slots.
  for (std::size_t width = 1; width < tasks; width *= 2)
    for (std::size_t i = 0; i + width < tasks; i += 2 * width)
      partial[i] += partial[i + width];

  TwirlResult result;
  result.transfer = partial[0] / static_cast<double>(samples);
  result.channel = from_transfer_matrix(result.transfer);
  result.extracted = extract_params(result.channel, rng,
                                    std::numeric_limits<double>::infinity());
  result.cp = cp_check(result.extracted.params);
  result.samples = samples;
  result.tasks = tasks;
  return result;
}

bool cp_within(const ChannelParams& p, double param_tol) {
  static const std::array<double, 4> gradient_norms{
      std::sqrt(99.0), std::sqrt(19.0), std::sqrt(19.0), std::sqrt(3.0)};
  const auto m = cp_margins(p);
  for (std::size_t k = 0; k < 4; ++k)
    if (m[k] / gradient_norms[k] < -param_tol) return false;
  return true;
}

KrausSet random_kraus_set(int rank, RngState& rng) {
  if (rank < 1) throw InvalidArgument("rank must be at least 1");
  std::vector<Operator4> g(static_cast<std::size_t>(rank));
  Operator4 s = Operator4::Zero();
  for (auto& gk : g) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) gk(i, j) = rng.complex_normal();
    s += gk.adjoint() * gk;
  }
  Eigen::SelfAdjointEigenSolver<Operator4> solver(s);
  const Operator4 inv_sqrt = solver.operatorInverseSqrt();
  std::vector<KrausTerm> terms;
  terms.reserve(g.size());
  for (const auto& gk : g) terms.push_back({1.0, gk * inv_sqrt});
  return KrausSet(std::move(terms));
}

}  // namespace covnot
