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

#include "covnot/channel.hpp"

#include <algorithm>
#include <cmath>

#include "covnot/error.hpp"

namespace covnot {

namespace {

void require_cp(const ChannelParams& p) {
  const CpReport r = cp_check(p);
  if (!r.is_cp) throw NotCompletelyPositive(r.margins);
}

void require_finite(const ChannelParams& p) {
  if (!std::isfinite(p.V) || !std::isfinite(p.X) || !std::isfinite(p.Y))
    throw InvalidArgument("channel parameters must be finite");
}

}  // namespace

std::array<double, 4> cp_margins(const ChannelParams& p) {
  const double V = p.V, X = p.X, Y = p.Y;
  return {1.0 + 3.0 * X + 3.0 * V + 9.0 * Y,  //
          1.0 + 3.0 * X - V - 3.0 * Y,        //
          1.0 - X + 3.0 * V - 3.0 * Y,        //
          1.0 - X - V + Y};
}

CpReport cp_check(const ChannelParams& p) {
  require_finite(p);
  CpReport r;
  r.margins = cp_margins(p);
  r.is_cp = std::all_of(r.margins.begin(), r.margins.end(),
                        [](double m) { return m >= -kCpTol; });
  return r;
}

//=========================================================================
// Kraus
//=========================================================================

KrausSet::KrausSet(std::vector<KrausTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (!std::isfinite(t.weight) || !t.op.allFinite())
      throw InvalidArgument("Kraus terms must be finite");
    if (t.weight < -1e-12)
      throw InvalidArgument("Kraus weights must be nonnegative");
  }
}

Operator4 KrausSet::completeness() const {
  Operator4 sum = Operator4::Zero();
  for (const auto& t : terms_) sum += t.weight * (t.op.adjoint() * t.op);
  return sum;
}

double KrausSet::trace_defect() const {
  return max_abs_diff(completeness(), Operator4::Identity());
}

Operator4 KrausSet::apply(const Operator4& rho) const {
  Operator4 out = Operator4::Zero();
  for (const auto& t : terms_) {
    if (t.weight == 0.0) continue;
    out += t.weight * (t.op * rho * t.op.adjoint());
  }
  return out;
}

ChannelFn KrausSet::as_function() const {
  return [set = *this](const Operator4& rho) { return set.apply(rho); };
}

std::array<double, 4> kraus_weights(const ChannelParams& p) {
  const auto m = cp_margins(p);
  return {m[0] / 16.0, m[1] / 16.0, m[2] / 16.0, m[3] / 16.0};
}

KrausSet kraus_set(const ChannelParams& p) {
  require_cp(p);
  const auto l = kraus_weights(p);
  std::vector<KrausTerm> terms;
  terms.reserve(16);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double w;
      if (i == 0 && j == 0)
        w = l[0];
      else if (j == 0)
        w = l[1];
      else if (i == 0)
        w = l[2];
      else
        w = l[3];
      // Boundary channels may carry -1e-10 < w < 0 from rounding.
      terms.push_back({std::max(w, 0.0), pauli::product(i, j)});
    }
  }
  return KrausSet(std::move(terms));
}

//=========================================================================
// Application
//=========================================================================

Operator4 apply_linear(const ChannelParams& p, const Operator4& op) {
  // op = (1/4) sum_ab c_ab s_a x s_b with c_ab = Tr[(s_a x s_b) op].
  Operator4 out = Operator4::Zero();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Operator4& s = pauli::product(a, b);
      const Complex c = (s.transpose().cwiseProduct(op)).sum();
      double scale = 1.0;
      if (a != 0 && b == 0)
        scale = p.V;
      else if (a == 0 && b != 0)
        scale = p.X;
      else if (a != 0 && b != 0)
        scale = p.Y;
      out += (scale * c / 4.0) * s;
    }
  }
  return out;
}

DensityMatrix apply(const ChannelParams& p, const DensityMatrix& rho) {
  require_cp(p);
  CoherenceForm c = to_coherence_form(rho);
  c.P *= p.V;
  c.Q *= p.X;
  c.M *= p.Y;
  return DensityMatrix(from_coherence_form(c));
}

DensityMatrix apply_kraus(const ChannelParams& p, const DensityMatrix& rho) {
  return DensityMatrix(kraus_set(p).apply(rho.op()));
}

ChannelFn as_function(const ChannelParams& p) {
  return [p](const Operator4& rho) { return apply_linear(p, rho); };
}

//=========================================================================
// Choi
//=========================================================================

Eigen::Matrix<double, 16, 1> ChoiMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix16c> solver(matrix,
                                                  Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

ChoiMatrix choi_matrix(const ChannelParams& p) {
  require_finite(p);
  ChoiMatrix j;
  j.matrix.setZero();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      Operator4 unit = Operator4::Zero();
      unit(r, c) = 1.0;
      const Operator4 image = apply_linear(p, unit);
      // (image (x) P_rc) has entries image(a, b) at (4a + r, 4b + c).
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) j.matrix(4 * a + r, 4 * b + c) = image(a, b);
    }
  }
  return j;
}

std::array<double, 4> choi_spectrum_closed_form(const ChannelParams& p) {
  const auto m = cp_margins(p);
  return {m[0] / 4.0, m[1] / 4.0, m[2] / 4.0, m[3] / 4.0};
}

//=========================================================================
// Convex decomposition
//=========================================================================

double ConvexWeights::min() const { return std::min({a1, a2, a3, a4}); }

ConvexWeights convex_decompose(const ChannelParams& p) {
  require_finite(p);
  Eigen::Matrix4d corners_mat;
  const std::array<ChannelParams, 4> order{corners::D, corners::B, corners::A,
                                           corners::C};
  for (int k = 0; k < 4; ++k) {
    const auto& c = order[static_cast<std::size_t>(k)];
    corners_mat.col(k) << c.V, c.X, c.Y, 1.0;
  }
  const Eigen::Vector4d rhs(p.V, p.X, p.Y, 1.0);
  const Eigen::Vector4d a = corners_mat.fullPivLu().solve(rhs);
  return {a(0), a(1), a(2), a(3)};
}

ChannelParams reconstruct(const ConvexWeights& w) {
  const auto mix = [&w](double d, double b, double a, double c) {
    return w.a1 * d + w.a2 * b + w.a3 * a + w.a4 * c;
  };
  using namespace corners;
  return {mix(D.V, B.V, A.V, C.V), mix(D.X, B.X, A.X, C.X),
          mix(D.Y, B.Y, A.Y, C.Y)};
}

//=========================================================================
// Extraction
//=========================================================================

ExtractedParams extract_params(const ChannelFn& box, RngState& rng, double tol,
                               int trials) {
  const Operator4 id = Operator4::Identity();
  const Operator4 probe_p = (id + pauli::product(3, 0)) / 4.0;
  const Operator4 probe_q = (id + pauli::product(0, 3)) / 4.0;
  const Operator4 probe_m = (id + pauli::product(3, 3)) / 4.0;

  const auto z_component = [](const Operator4& out, int a, int b) {
    return (pauli::product(a, b).transpose().cwiseProduct(out)).sum().real();
  };

  ExtractedParams result;
  result.params.V = z_component(box(probe_p), 3, 0);
  result.params.X = z_component(box(probe_q), 0, 3);
  result.params.Y = z_component(box(probe_m), 3, 3);
  if (!std::isfinite(result.params.V) || !std::isfinite(result.params.X) ||
      !std::isfinite(result.params.Y))
    throw NotCovariant(INFINITY);

  double residual = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Operator4 rho = random_density_operator(rng);
    residual = std::max(
        residual, max_abs_diff(box(rho), apply_linear(result.params, rho)));
  }
  result.residual = residual;
  if (!(residual <= tol)) throw NotCovariant(residual);
  return result;
}

}  // namespace covnot
