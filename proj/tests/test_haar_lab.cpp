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
#include <cstdlib>

#include "covnot/error.hpp"
#include "covnot/not_optimizer.hpp"
#include "covnot/random.hpp"
#include "covnot/twirl.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace covnot;
using test_support::random_cp_params;

namespace {

struct Moments {
  std::array<double, 4> mean{};  // E|U_ij|^2, row-major
  std::array<double, 4> se{};
};

template <typename Draw>
Moments moment_stats(Draw draw, int n) {
  std::array<double, 4> sum{}, sum2{};
  for (int t = 0; t < n; ++t) {
    const Operator2 u = draw();
    for (int k = 0; k < 4; ++k) {
      const double x = std::norm(u(k / 2, k % 2));
      sum[k] += x;
      sum2[k] += x * x;
    }
  }
  Moments m;
  for (int k = 0; k < 4; ++k) {
    m.mean[k] = sum[k] / n;
    m.se[k] = std::sqrt((sum2[k] / n - m.mean[k] * m.mean[k]) / n);
  }
  return m;
}

ChannelParams exact_twirl(const ChannelFn& f) {
  const auto r = oracle::transfer([&](const oracle::M4& p) { return f(p); });
  const auto e = oracle::exact_twirl_params(r);
  return {e[0], e[1], e[2]};
}

double param_gap(const ChannelParams& a, const ChannelParams& b) {
  return std::max({std::abs(a.V - b.V), std::abs(a.X - b.X), std::abs(a.Y - b.Y)});
}

}  // namespace

TEST_SUITE("haar_lab") {
  TEST_CASE("haar_su2 returns special unitaries") {
    RngState rng(51);
    for (int t = 0; t < 1000; ++t) {
      const Operator2 u = haar_su2(rng);
      CHECK((u * u.adjoint() - Operator2::Identity()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(u.determinant() - 1.0) < 1e-12);
    }
  }

  TEST_CASE("haar_su2 moments match quadrature over the 3-sphere") {
    // U_00 = a + ib and Tr U = 2a for the quaternion (a, b, c, d).
    const double e_u00 = oracle::sphere_average([](double a, double b, double, double) {
      return a * a + b * b;
    });
    const double e_tr = oracle::sphere_average([](double a, double, double, double) { return 2 * a; });
    CHECK(e_u00 == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(std::abs(e_tr) < 1e-12);

    RngState rng(52);
    const int n = 1000000;
    double s = 0, s2 = 0, t = 0, t2 = 0;
    for (int k = 0; k < n; ++k) {
      const Operator2 u = haar_su2(rng);
      const double x = std::norm(u(0, 0));
      const double y = u.trace().real();
      s += x;
      s2 += x * x;
      t += y;
      t2 += y * y;
    }
    const double mx = s / n, my = t / n;
    const double sx = std::sqrt((s2 / n - mx * mx) / n);
    const double sy = std::sqrt((t2 / n - my * my) / n);
    CHECK(std::abs(mx - e_u00) < 3 * sx);
    CHECK(std::abs(my - e_tr) < 3 * sy);
  }

  TEST_CASE("fixed seed and stream reproduce draws exactly") {
    RngState a(7, 3), b(7, 3), c(7, 4);
    const Operator2 ua = haar_su2(a), ub = haar_su2(b), uc = haar_su2(c);
    CHECK((ua - ub).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ua - uc).cwiseAbs().maxCoeff() > 0.0);
    const RngState f = RngState(7, 0).fork(3);
    RngState g = f;
    CHECK((haar_su2(g) - ua).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("Haar measure is invariant under a fixed rotation") {
    RngState rng(53), rng2(54);
    const Operator2 w = haar_su2(rng);
    const int n = 100000;
    const Moments raw = moment_stats([&] { return haar_su2(rng); }, n);
    const Moments moved = moment_stats([&] { return Operator2(w * haar_su2(rng2)); }, n);
    for (int k = 0; k < 4; ++k) {
      const double se = std::hypot(raw.se[k], moved.se[k]);
      CHECK(std::abs(raw.mean[k] - moved.mean[k]) < 3 * se);
    }
  }

  TEST_CASE("check_covariance separates covariant and entangling maps") {
    RngState rng(55);
    const ChannelParams p = random_cp_params(rng);
    CHECK(check_covariance(as_function(p), 100, rng).max_deviation < 1e-11);
    CHECK(check_covariance([](const Operator4& r) { return r; }, 100, rng).max_deviation < 1e-14);
    Operator4 cnot = Operator4::Zero();
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    const ChannelFn ent = [cnot](const Operator4& r) -> Operator4 { return cnot * r * cnot.adjoint(); };
    CHECK(check_covariance(ent, 100, rng).max_deviation > 0.01);
    CHECK_THROWS_AS(check_covariance(ent, 0, rng), InvalidArgument);
  }

  TEST_CASE("transfer matrix uses density-matrix probes only") {
    RngState rng(56);
    const KrausSet k = random_kraus_set(3, rng);
    int calls = 0;
    const ChannelFn strict = [&](const Operator4& r) {
      ++calls;
      const DensityMatrix checked(r);  // throws on anything else
      return k.apply(checked.op());
    };
    const Matrix16d r = transfer_matrix(strict);
    CHECK(calls == 16);
    const auto o = oracle::transfer([&](const oracle::M4& m) { return k.apply(m); });
    CHECK((r - o).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("conjugation transfer matrix is orthogonal and matches the oracle") {
    RngState rng(57);
    for (int t = 0; t < 20; ++t) {
      const LocalUnitaryPair u = haar_local_pair(rng);
      const Operator4 j = u.joint();
      const Matrix16d r = conjugation_transfer_matrix(u);
      const auto o = oracle::transfer([&](const oracle::M4& m) { return oracle::M4(j * m * j.adjoint()); });
      CHECK((r - o).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((r.transpose() * r - Matrix16d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("twirl leaves covariant channels fixed") {
    RngState rng(58);
    const TwirlResult id = twirl([](const Operator4& r) { return r; }, 100000, rng);
    CHECK(param_gap(id.extracted.params, {1, 1, 1}) < 1e-3);
    CHECK(id.samples == 100000);
    CHECK(id.tasks == kDefaultTwirlTasks);
    for (int t = 0; t < 5; ++t) {
      const ChannelParams p = random_cp_params(rng);
      const TwirlResult r = twirl(as_function(p), 2000, rng);
      CHECK(param_gap(r.extracted.params, p) < 1e-3);
      CHECK(r.extracted.residual < 1e-10);
    }
    const TwirlResult sep = twirl(kraus_set(u_sep()).as_function(), 2000, rng);
    CHECK(param_gap(sep.extracted.params, u_sep()) < 1e-3);
  }

  TEST_CASE("twirl of random channels approaches the exact group average") {
    RngState rng(59);
    for (int t = 0; t < 3; ++t) {
      const KrausSet k = random_kraus_set(1 + t, rng);
      const ChannelFn f = k.as_function();
      const ChannelParams exact = exact_twirl(f);
      const TwirlResult r = twirl(f, 100000, rng);
      CHECK(param_gap(r.extracted.params, exact) < 1e-3);
      CHECK(cp_within(r.extracted.params, kTwirlParamTol));
      CHECK(cp_check(exact).is_cp);
      CHECK(check_covariance(r.channel, 50, rng).max_deviation < 2e-2);
    }
  }

  TEST_CASE("twirl residual decays with the sample count") {
    RngState rng(60);
    const KrausSet k = random_kraus_set(2, rng);
    const ChannelFn f = k.as_function();
    RngState a(61), b(61);
    const double small = check_covariance(twirl(f, 1000, a).channel, 50, a).max_deviation;
    const double large = check_covariance(twirl(f, 100000, b).channel, 50, b).max_deviation;
    CHECK(large < small);
  }

  TEST_CASE("twirl is linear in the channel") {
    RngState rng(62);
    const KrausSet k1 = random_kraus_set(2, rng);
    const KrausSet k2 = random_kraus_set(3, rng);
    const double eta = 0.3;
    const ChannelFn mix = [&](const Operator4& r) -> Operator4 {
      return eta * k1.apply(r) + (1 - eta) * k2.apply(r);
    };
    const ChannelParams a = twirl(k1.as_function(), 100000, rng).extracted.params;
    const ChannelParams b = twirl(k2.as_function(), 100000, rng).extracted.params;
    const ChannelParams m = twirl(mix, 100000, rng).extracted.params;
    CHECK(std::abs(m.V - (eta * a.V + (1 - eta) * b.V)) < 2e-3);
    CHECK(std::abs(m.X - (eta * a.X + (1 - eta) * b.X)) < 2e-3);
    CHECK(std::abs(m.Y - (eta * a.Y + (1 - eta) * b.Y)) < 2e-3);
  }

  TEST_CASE("twirl result does not depend on the worker count") {
    RngState rng(63);
    const KrausSet k = random_kraus_set(2, rng);
    RngState a(64, 5), b(64, 5);
    setenv("COVNOT_THREADS", "1", 1);
    const TwirlResult one = twirl(k.as_function(), 5000, a, 8);
    setenv("COVNOT_THREADS", "4", 1);
    const TwirlResult four = twirl(k.as_function(), 5000, b, 8);
    unsetenv("COVNOT_THREADS");
    CHECK((one.transfer - four.transfer).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("twirling never increases the NOT error") {
    RngState rng(65);
    for (int t = 0; t < 3; ++t) {
      const KrausSet k = random_kraus_set(2, rng);
      const double alpha = std::sqrt(0.5) * rng.uniform();
      double original = 0.0;
      for (int s = 0; s < 500; ++s) {
        const auto phi = random_pure_state(alpha, rng);
        original = std::max(original, distance_to_complement(k.apply(phi.projector()), phi.amplitudes()));
      }
      const ChannelParams p = twirl(k.as_function(), 100000, rng).extracted.params;
      CHECK(covariant_error(p.V + p.X, p.Y, alpha) <= original + 1e-3);
      const ChannelParams e = exact_twirl(k.as_function());
      CHECK(covariant_error(e.V + e.X, e.Y, alpha) <= original + 1e-9);
    }
  }

  TEST_CASE("random Kraus sets are trace preserving") {
    RngState rng(66);
    for (int rank = 1; rank <= 16; ++rank) CHECK(random_kraus_set(rank, rng).trace_defect() < 1e-12);
    CHECK_THROWS_AS(random_kraus_set(0, rng), InvalidArgument);
    CHECK_THROWS_AS(twirl([](const Operator4& r) { return r; }, 0, rng), InvalidArgument);
  }

  TEST_CASE("cp_within tolerance") {
    CHECK(cp_within(u_sep(), 1e-12));
    CHECK(cp_within({-1.0 / 3 - 5e-4, -1.0 / 3, 1.0 / 9}, 1e-3));
    CHECK_FALSE(cp_within({-0.34, 0, 0}, 1e-3));
  }
}
