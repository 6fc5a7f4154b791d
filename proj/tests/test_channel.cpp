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

#include <cmath>

#include "covnot/channel.hpp"
#include "covnot/error.hpp"
#include "covnot/not_optimizer.hpp"
#include "covnot/operator_core.hpp"
#include "covnot/random.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace covnot;
using test_support::pauli_weighted_kraus;
using test_support::random_cp_params;

TEST_SUITE("channel") {
  TEST_CASE("cp_check on named triples") {
    const CpReport id = cp_check({1, 1, 1});
    CHECK(id.is_cp);
    CHECK(id.margins[0] == 16.0);
    CHECK(id.margins[1] == 0.0);
    CHECK(id.margins[2] == 0.0);
    CHECK(id.margins[3] == 0.0);
    CHECK(cp_check(g_not()).is_cp);
    CHECK_FALSE(cp_check({-1.0 / 3, -1.0 / 3, -1.0 / 3}).is_cp);
    CHECK(cp_check(u_sep()).is_cp);
    CHECK(cp_check(u_me(0.2)).is_cp);
    CHECK_FALSE(cp_check({-0.34, 0, 0}).is_cp);
  }

  TEST_CASE("CP implies the box constraints") {
    RngState rng(21);
    for (int t = 0; t < 1000; ++t) {
      const ChannelParams p = random_cp_params(rng);
      REQUIRE(cp_check(p).is_cp);
      CHECK(p.V >= -1.0 / 3 - 1e-12);
      CHECK(p.V <= 1 + 1e-12);
      CHECK(p.X >= -1.0 / 3 - 1e-12);
      CHECK(p.X <= 1 + 1e-12);
      // The four margins read as bounds on Y.
      CHECK(p.Y >= -(1 + 3 * (p.V + p.X)) / 9 - 1e-12);
      CHECK(p.Y >= p.V + p.X - 1 - 1e-12);
      CHECK(p.Y <= (1 + 3 * p.X - p.V) / 3 + 1e-12);
      CHECK(p.Y <= (1 + 3 * p.V - p.X) / 3 + 1e-12);
    }
  }

  TEST_CASE("kraus set of the identity has a single term") {
    const KrausSet k = kraus_set({1, 1, 1});
    int nonzero = 0;
    for (const auto& t : k.terms())
      if (t.weight > 0) {
        ++nonzero;
        CHECK(max_abs_diff(std::sqrt(t.weight) * t.op, Operator4::Identity()) < 1e-15);
      }
    CHECK(nonzero == 1);
  }

  TEST_CASE("kraus set of U_SEP is nine thirds of Pauli products") {
    const KrausSet k = kraus_set(u_sep());
    int nonzero = 0;
    for (const auto& t : k.terms()) {
      if (t.weight < 1e-15) continue;
      ++nonzero;
      CHECK(t.weight == doctest::Approx(1.0 / 9).epsilon(1e-14));
      bool found = false;
      for (int i = 1; i < 4; ++i)
        for (int j = 1; j < 4; ++j)
          found = found || max_abs_diff(std::sqrt(t.weight) * t.op,
                                        tensor_product(pauli::sigma(i), pauli::sigma(j)) / 3.0) <
                               1e-15;
      CHECK(found);
    }
    CHECK(nonzero == 9);
  }

  TEST_CASE("G_NOT Kraus weights from the closed-form expressions") {
    const auto w = kraus_weights(g_not());
    const auto o = oracle::kraus_weights(-1.0 / 15, -1.0 / 15, -1.0 / 15);
    for (int k = 0; k < 4; ++k) CHECK(w[k] == doctest::Approx(o[k]).epsilon(1e-15));
    // Frozen from the oracle: 0 and 1/15 for every other class.
    CHECK(std::abs(w[0]) < 1e-16);
    CHECK(w[1] == doctest::Approx(1.0 / 15).epsilon(1e-14));
    CHECK(w[2] == doctest::Approx(1.0 / 15).epsilon(1e-14));
    CHECK(w[3] == doctest::Approx(1.0 / 15).epsilon(1e-14));
    CHECK(kraus_set(g_not()).trace_defect() < 1e-12);
  }

  TEST_CASE("kraus_set rejects non-CP triples") {
    CHECK_THROWS_AS(kraus_set({-1.0 / 3, -1.0 / 3, -1.0 / 3}), NotCompletelyPositive);
    try {
      kraus_set({-1.0 / 3, -1.0 / 3, -1.0 / 3});
    } catch (const NotCompletelyPositive& e) {
      CHECK(e.margins()[0] == doctest::Approx(-4.0));
    }
  }

  TEST_CASE("Kraus sets are trace preserving") {
    RngState rng(22);
    for (int t = 0; t < 200; ++t) CHECK(kraus_set(random_cp_params(rng)).trace_defect() < 1e-12);
  }

  TEST_CASE("apply on identity, G_NOT and rejection") {
    RngState rng(23);
    for (int t = 0; t < 100; ++t) {
      const DensityMatrix rho(random_density_operator(rng));
      CHECK(max_abs_diff(apply({1, 1, 1}, rho).op(), rho.op()) < 1e-14);
      const Operator4 expected = (4.0 * Operator4::Identity() - rho.op()) / 15.0;
      CHECK(max_abs_diff(apply(g_not(), rho).op(), expected) < 1e-14);
    }
    CHECK_THROWS_AS(apply({-1.0 / 3, -1.0 / 3, -1.0 / 3}, DensityMatrix::maximally_mixed()),
                    NotCompletelyPositive);
    CHECK_THROWS_AS(apply_kraus({-1.0 / 3, -1.0 / 3, -1.0 / 3}, DensityMatrix::maximally_mixed()),
                    NotCompletelyPositive);
  }

  TEST_CASE("coherence route equals Kraus route and the explicit Pauli sum") {
    RngState rng(24);
    for (int t = 0; t < 300; ++t) {
      const ChannelParams p = random_cp_params(rng);
      const DensityMatrix rho(random_density_operator(rng));
      const Operator4 a = apply(p, rho).op();
      CHECK(max_abs_diff(a, apply_kraus(p, rho).op()) < 1e-12);
      const auto l = oracle::kraus_weights(p.V, p.X, p.Y);
      CHECK(max_abs_diff(a, pauli_weighted_kraus(l, rho.op())) < 1e-12);
      CHECK(std::abs(a.trace() - 1.0) < 1e-12);
    }
  }

  TEST_CASE("output on alpha|uu> + beta|dd> matches the explicit matrix") {
    RngState rng(25);
    for (int t = 0; t < 100; ++t) {
      const ChannelParams p = random_cp_params(rng);
      const double alpha = rng.uniform();
      const auto psi = PureTwoQubitState::canonical(alpha);
      const Operator4 out = apply(p, DensityMatrix::pure(psi)).op();
      CHECK(max_abs_diff(out, oracle::pure_output(p.V, p.X, p.Y, alpha)) < 1e-12);
    }
  }

  TEST_CASE("covariance of the family") {
    RngState rng(26);
    for (int t = 0; t < 100; ++t) {
      const ChannelParams p = random_cp_params(rng);
      const DensityMatrix rho(random_density_operator(rng));
      const Operator4 u = haar_local_pair(rng).joint();
      const Operator4 lhs = apply(p, DensityMatrix(u * rho.op() * u.adjoint())).op();
      const Operator4 rhs = u * apply(p, rho).op() * u.adjoint();
      CHECK(max_abs_diff(lhs, rhs) < 1e-11);
    }
  }

  TEST_CASE("apply_linear accepts every triple and is linear") {
    RngState rng(27);
    const ChannelParams bad{-1.0 / 3, -1.0 / 3, -1.0 / 3};
    const Operator4 a = random_density_operator(rng);
    const Operator4 b = random_density_operator(rng);
    CHECK(max_abs_diff(apply_linear(bad, 0.3 * a + 0.7 * b),
                       0.3 * apply_linear(bad, a) + 0.7 * apply_linear(bad, b)) < 1e-14);
  }

  TEST_CASE("Choi matrix of the identity") {
    const ChoiMatrix j = choi_matrix({1, 1, 1});
    CHECK(std::abs(j.matrix.trace() - 4.0) < 1e-12);
    CHECK((j.matrix - j.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    const auto ev = j.eigenvalues();
    CHECK(ev(15) == doctest::Approx(4.0).epsilon(1e-12));
    for (int k = 0; k < 15; ++k) CHECK(std::abs(ev(k)) < 1e-12);
  }

  TEST_CASE("Choi matrix of a non-CP triple has a negative eigenvalue") {
    const ChoiMatrix j = choi_matrix({-1.0 / 3, -1.0 / 3, -1.0 / 3});
    CHECK(j.min_eigenvalue() == doctest::Approx(-1.0).epsilon(1e-10));
  }

  TEST_CASE("Choi spectrum multiplicities are constant across random triples") {
    RngState rng(28);
    for (int t = 0; t < 100; ++t) {
      const ChannelParams p{2 * rng.uniform() - 1, 2 * rng.uniform() - 1, 2 * rng.uniform() - 1};
      const auto ev = choi_matrix(p).eigenvalues();
      const auto closed = choi_spectrum_closed_form(p);
      // Count numerical eigenvalues near each closed-form value; values are
      // distinct for generic p.
      for (int k = 0; k < 4; ++k) {
        int count = 0;
        for (int i = 0; i < 16; ++i)
          if (std::abs(ev(i) - closed[k]) < 1e-9) ++count;
        CHECK(count == kChoiMultiplicities[k]);
      }
    }
  }

  TEST_CASE("Choi eigenvalues agree with the margin formulas") {
    RngState rng(29);
    for (int t = 0; t < 500; ++t) {
      const ChannelParams p{2.4 * rng.uniform() - 1.2, 2.4 * rng.uniform() - 1.2,
                            2.4 * rng.uniform() - 1.2};
      const auto margins = cp_margins(p);
      std::vector<double> expected;
      for (int k = 0; k < 4; ++k)
        for (int r = 0; r < kChoiMultiplicities[k]; ++r) expected.push_back(margins[k] / 4);
      std::sort(expected.begin(), expected.end());
      const auto ev = choi_matrix(p).eigenvalues();
      for (int i = 0; i < 16; ++i) CHECK(std::abs(ev(i) - expected[i]) < 1e-10);
    }
  }

  TEST_CASE("Choi positivity agrees with the four inequalities on a grid") {
    int compared = 0;
    for (int i = 0; i < 21; ++i)
      for (int j = 0; j < 21; ++j)
        for (int k = 0; k < 21; ++k) {
          const ChannelParams p{-1.2 + 0.12 * i, -1.2 + 0.12 * j, -1.2 + 0.12 * k};
          const auto m = cp_margins(p);
          const double smallest = *std::min_element(m.begin(), m.end());
          if (std::abs(smallest) <= 1e-8) continue;
          ++compared;
          CHECK((choi_matrix(p).min_eigenvalue() >= -1e-10) == cp_check(p).is_cp);
        }
    CHECK(compared > 8000);
  }

  TEST_CASE("convex decomposition of named points") {
    const ConvexWeights d = convex_decompose(corners::D);
    CHECK(d.a1 == doctest::Approx(1.0));
    CHECK(std::abs(d.a2) < 1e-14);
    CHECK(std::abs(d.a3) < 1e-14);
    CHECK(std::abs(d.a4) < 1e-14);
    const ConvexWeights mid = convex_decompose({1.0 / 3, 1.0 / 3, -1.0 / 3});
    CHECK(mid.a3 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mid.a4 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(mid.a1) < 1e-14);
    CHECK(std::abs(mid.a2) < 1e-14);
    const ConvexWeights bad = convex_decompose({-1.0 / 3, -1.0 / 3, -1.0 / 3});
    CHECK(bad.min() < 0);
  }

  TEST_CASE("convex decomposition matches the margin oracle") {
    RngState rng(30);
    for (int t = 0; t < 500; ++t) {
      const ChannelParams p{2.4 * rng.uniform() - 1.2, 2.4 * rng.uniform() - 1.2,
                            2.4 * rng.uniform() - 1.2};
      const ConvexWeights w = convex_decompose(p);
      const auto o = oracle::barycentric(p.V, p.X, p.Y);
      CHECK(std::abs(w.a1 - o[0]) < 1e-12);
      CHECK(std::abs(w.a2 - o[1]) < 1e-12);
      CHECK(std::abs(w.a3 - o[2]) < 1e-12);
      CHECK(std::abs(w.a4 - o[3]) < 1e-12);
      CHECK(std::abs(w.sum() - 1.0) < 1e-12);
      CHECK((w.min() >= -1e-10) == cp_check(p).is_cp);
    }
  }

  TEST_CASE("G_NOT mixture acts like G_NOT") {
    const ConvexWeights w = convex_decompose(g_not());
    CHECK(w.min() >= 0);
    const ChannelParams back = reconstruct(w);
    CHECK(std::abs(back.V - g_not().V) < 1e-12);
    RngState rng(31);
    for (int t = 0; t < 100; ++t) {
      const DensityMatrix rho(random_density_operator(rng));
      const Operator4 mix = w.a1 * apply(corners::D, rho).op() + w.a2 * apply(corners::B, rho).op() +
                            w.a3 * apply(corners::A, rho).op() + w.a4 * apply(corners::C, rho).op();
      CHECK(max_abs_diff(mix, apply(g_not(), rho).op()) < 1e-12);
    }
  }

  TEST_CASE("extract_params on known boxes") {
    RngState rng(32);
    const ExtractedParams id = extract_params([](const Operator4& r) { return r; }, rng);
    CHECK(id.params.V == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(id.params.X == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(id.params.Y == doctest::Approx(1.0).epsilon(1e-12));
    const ExtractedParams g = extract_params(as_function(g_not()), rng);
    CHECK(g.params.V == doctest::Approx(-1.0 / 15).epsilon(1e-12));
    CHECK(g.params.X == doctest::Approx(-1.0 / 15).epsilon(1e-12));
    CHECK(g.params.Y == doctest::Approx(-1.0 / 15).epsilon(1e-12));
    CHECK(g.residual < 1e-12);
  }

  TEST_CASE("extract_params rejects a non-covariant box") {
    RngState rng(33);
    Operator4 cnot = Operator4::Zero();
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    const ChannelFn box = [cnot](const Operator4& r) -> Operator4 { return cnot * r * cnot.adjoint(); };
    CHECK_THROWS_AS(extract_params(box, rng), NotCovariant);
  }

  TEST_CASE("extract_params is linear in the box") {
    RngState rng(34);
    for (int t = 0; t < 50; ++t) {
      const ChannelParams p = random_cp_params(rng);
      const ChannelParams q = random_cp_params(rng);
      const double eta = rng.uniform();
      const ChannelFn mix = [&](const Operator4& r) -> Operator4 {
        return eta * apply_linear(p, r) + (1 - eta) * apply_linear(q, r);
      };
      const ChannelParams e = extract_params(mix, rng).params;
      CHECK(std::abs(e.V - (eta * p.V + (1 - eta) * q.V)) < 1e-10);
      CHECK(std::abs(e.X - (eta * p.X + (1 - eta) * q.X)) < 1e-10);
      CHECK(std::abs(e.Y - (eta * p.Y + (1 - eta) * q.Y)) < 1e-10);
    }
  }

  TEST_CASE("Kraus labelling: sigma_i (x) I must carry (1 - V)/4 on the U_ME line") {
    // Two candidate assignments for U_ME(V): the one used by kraus_set and
    // the one with the single-qubit weights exchanged. Only the former
    // extracts V as the free parameter.
    RngState rng(35);
    for (double v : {-1.0 / 3, 0.0, 0.25, 0.6, 1.0}) {
      const ChannelParams p = u_me(v);
      const std::array<double, 4> kept{0.0, (1 - v) / 4, (1.0 / 3 + v) / 4, 0.0};
      const std::array<double, 4> swapped{0.0, (1.0 / 3 + v) / 4, (1 - v) / 4, 0.0};
      const auto lib = kraus_weights(p);
      for (int k = 0; k < 4; ++k) CHECK(std::abs(lib[k] - kept[k]) < 1e-15);

      const ExtractedParams a =
          extract_params([&](const Operator4& r) { return pauli_weighted_kraus(kept, r); }, rng);
      const ExtractedParams b =
          extract_params([&](const Operator4& r) { return pauli_weighted_kraus(swapped, r); }, rng);
      for (const auto& e : {a, b}) {
        CHECK(e.params.Y == doctest::Approx(-1.0 / 3).epsilon(1e-12));
        CHECK(e.params.V + e.params.X == doctest::Approx(2.0 / 3).epsilon(1e-12));
      }
      CHECK(std::abs(a.params.V - v) < 1e-12);
      CHECK(std::abs(b.params.V - (2.0 / 3 - v)) < 1e-12);
    }
  }
}
