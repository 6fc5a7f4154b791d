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

#include "covnot/covnot.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "covnot/channel.hpp"
#include "covnot/error.hpp"
#include "covnot/not_optimizer.hpp"
#include "covnot/operator_core.hpp"
#include "covnot/parallel.hpp"
#include "covnot/random.hpp"
#include "covnot/twirl.hpp"

struct covnot_rng {
  covnot::RngState state;
};

struct covnot_kraus {
  covnot::KrausSet set;
};

namespace {

thread_local std::string g_last_error;

covnot_status fail(covnot_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <typename Fn>
covnot_status guarded(Fn&& fn) {
  try {
    fn();
    return COVNOT_OK;
  } catch (const covnot::NotCompletelyPositive& e) {
    return fail(COVNOT_ERR_NOT_CP, e.what());
  } catch (const covnot::NotCovariant& e) {
    return fail(COVNOT_ERR_NOT_COVARIANT, e.what());
  } catch (const covnot::NotTracePreserving& e) {
    return fail(COVNOT_ERR_NOT_TRACE_PRESERVING, e.what());
  } catch (const covnot::NonUnitNorm& e) {
    return fail(COVNOT_ERR_NON_UNIT_NORM, e.what());
  } catch (const covnot::MixedFamilies& e) {
    return fail(COVNOT_ERR_MIXED_FAMILIES, e.what());
  } catch (const covnot::OutOfRange& e) {
    return fail(COVNOT_ERR_OUT_OF_RANGE, e.what());
  } catch (const covnot::InvalidArgument& e) {
    return fail(COVNOT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(COVNOT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(COVNOT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(COVNOT_ERR_INTERNAL, "unknown error");
  }
}

#define COVNOT_REQUIRE(ptr)                                           \
  do {                                                                \
    if ((ptr) == nullptr)                                             \
      return fail(COVNOT_ERR_NULL_POINTER, #ptr " must not be null"); \
  } while (0)

covnot::ChannelParams to_cpp(covnot_params p) { return {p.V, p.X, p.Y}; }

covnot_params to_c(const covnot::ChannelParams& p) { return {p.V, p.X, p.Y}; }

covnot::Operator4 to_cpp(const covnot_op4& op) {
  covnot::Operator4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const covnot_complex& c = op.m[4 * i + j];
      m(i, j) = {c.re, c.im};
    }
  return m;
}

void to_c(const covnot::Operator4& m, covnot_op4* out) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out->m[4 * i + j] = {m(i, j).real(), m(i, j).imag()};
}

covnot_family to_c(covnot::OptimalFamily f) {
  switch (f) {
    case covnot::OptimalFamily::SepPoint:
      return COVNOT_FAMILY_SEP_POINT;
    case covnot::OptimalFamily::LineSegment:
      return COVNOT_FAMILY_LINE_SEGMENT;
    case covnot::OptimalFamily::MeLine:
      return COVNOT_FAMILY_ME_LINE;
    case covnot::OptimalFamily::InteriorRegression:
      return COVNOT_FAMILY_INTERIOR_REGRESSION;
  }
  return COVNOT_FAMILY_INTERIOR_REGRESSION;
}

covnot_error_report to_c(const covnot::ErrorReport& r) {
  return {r.delta, to_c(r.point), to_c(r.family), r.v_min, r.v_max};
}

}  // namespace

extern "C" {

const char* covnot_version(void) { return "0.1.0"; }

const char* covnot_status_name(covnot_status status) {
  switch (status) {
    case COVNOT_OK:
      return "ok";
    case COVNOT_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case COVNOT_ERR_OUT_OF_RANGE:
      return "out-of-range";
    case COVNOT_ERR_NOT_CP:
      return "not-completely-positive";
    case COVNOT_ERR_NOT_COVARIANT:
      return "not-covariant";
    case COVNOT_ERR_NOT_TRACE_PRESERVING:
      return "not-trace-preserving";
    case COVNOT_ERR_NON_UNIT_NORM:
      return "non-unit-norm";
    case COVNOT_ERR_MIXED_FAMILIES:
      return "mixed-families";
    case COVNOT_ERR_NULL_POINTER:
      return "null-pointer";
    case COVNOT_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* covnot_last_error_message(void) { return g_last_error.c_str(); }

size_t covnot_thread_cap(void) { return covnot::parallel::thread_cap(); }

covnot_status covnot_rng_create(uint64_t seed, uint64_t stream, covnot_rng** out) {
  COVNOT_REQUIRE(out);
  return guarded([&] { *out = new covnot_rng{covnot::RngState(seed, stream)}; });
}

void covnot_rng_destroy(covnot_rng* rng) { delete rng; }

covnot_status covnot_cp_check(covnot_params p, int* is_cp, double margins[4]) {
  COVNOT_REQUIRE(is_cp);
  return guarded([&] {
    const auto r = covnot::cp_check(to_cpp(p));
    *is_cp = r.is_cp ? 1 : 0;
    if (margins) std::copy(r.margins.begin(), r.margins.end(), margins);
  });
}

covnot_status covnot_choi_spectrum(covnot_params p, double eigenvalues[16]) {
  COVNOT_REQUIRE(eigenvalues);
  return guarded([&] {
    const auto ev = covnot::choi_matrix(to_cpp(p)).eigenvalues();
    for (int i = 0; i < 16; ++i) eigenvalues[i] = ev(i);
  });
}

covnot_status covnot_choi_closed_form(covnot_params p, double eigenvalues[4],
                                      int multiplicities[4]) {
  COVNOT_REQUIRE(eigenvalues);
  return guarded([&] {
    const auto ev = covnot::choi_spectrum_closed_form(to_cpp(p));
    std::copy(ev.begin(), ev.end(), eigenvalues);
    if (multiplicities)
      std::copy(covnot::kChoiMultiplicities.begin(),
                covnot::kChoiMultiplicities.end(), multiplicities);
  });
}

covnot_status covnot_decompose(covnot_params p, double weights[4]) {
  COVNOT_REQUIRE(weights);
  return guarded([&] {
    const auto w = covnot::convex_decompose(to_cpp(p));
    weights[0] = w.a1;
    weights[1] = w.a2;
    weights[2] = w.a3;
    weights[3] = w.a4;
  });
}

covnot_status covnot_reconstruct(const double weights[4], covnot_params* out) {
  COVNOT_REQUIRE(weights);
  COVNOT_REQUIRE(out);
  return guarded([&] {
    *out = to_c(covnot::reconstruct({weights[0], weights[1], weights[2], weights[3]}));
  });
}

covnot_status covnot_kraus_weights(covnot_params p, double weights[4]) {
  COVNOT_REQUIRE(weights);
  return guarded([&] {
    const auto w = covnot::kraus_weights(to_cpp(p));
    std::copy(w.begin(), w.end(), weights);
  });
}

covnot_status covnot_apply(covnot_params p, const covnot_op4* rho, covnot_op4* out) {
  COVNOT_REQUIRE(rho);
  COVNOT_REQUIRE(out);
  return guarded([&] {
    const covnot::DensityMatrix in(to_cpp(*rho));
    to_c(covnot::apply(to_cpp(p), in).op(), out);
  });
}

covnot_status covnot_apply_kraus(covnot_params p, const covnot_op4* rho,
                                 covnot_op4* out) {
  COVNOT_REQUIRE(rho);
  COVNOT_REQUIRE(out);
  return guarded([&] {
    const covnot::DensityMatrix in(to_cpp(*rho));
    to_c(covnot::apply_kraus(to_cpp(p), in).op(), out);
  });
}

covnot_params covnot_u_sep(void) { return to_c(covnot::u_sep()); }

covnot_params covnot_g_not(void) { return to_c(covnot::g_not()); }

covnot_status covnot_u_me(double v, covnot_params* out) {
  COVNOT_REQUIRE(out);
  return guarded([&] { *out = to_c(covnot::u_me(v)); });
}

const char* covnot_family_name(covnot_family family) {
  switch (family) {
    case COVNOT_FAMILY_SEP_POINT:
      return "sep-point";
    case COVNOT_FAMILY_LINE_SEGMENT:
      return "line-segment";
    case COVNOT_FAMILY_ME_LINE:
      return "me-line";
    case COVNOT_FAMILY_INTERIOR_REGRESSION:
      return "interior-regression";
  }
  return "unknown";
}

double covnot_alpha0(void) { return covnot::alpha0(); }

double covnot_alpha_max(void) { return covnot::alpha_max(); }

covnot_status covnot_covariant_error(double Z, double Y, double alpha, double* out) {
  COVNOT_REQUIRE(out);
  return guarded([&] { *out = covnot::covariant_error(Z, Y, alpha); });
}

covnot_status covnot_optimal_not(double alpha, covnot_error_report* out) {
  COVNOT_REQUIRE(out);
  return guarded([&] { *out = to_c(covnot::optimal_not(alpha)); });
}

covnot_status covnot_numerical_optimal_not(double alpha,
                                           covnot_numerical_optimum* out) {
  COVNOT_REQUIRE(out);
  return guarded([&] {
    const auto r = covnot::numerical_optimal_not(alpha);
    out->report = to_c(r.report);
    out->grid_delta = r.grid_delta;
    out->grid_point = to_c(r.grid_point);
    out->grid_points = r.grid_points;
    out->active_mask = r.active_mask;
    out->kkt_violation = r.kkt_violation;
  });
}

covnot_status covnot_distance_to_complement(const covnot_op4* rho,
                                            const covnot_complex phi[4],
                                            double* out) {
  COVNOT_REQUIRE(rho);
  COVNOT_REQUIRE(phi);
  COVNOT_REQUIRE(out);
  return guarded([&] {
    covnot::Ket4 ket;
    for (int i = 0; i < 4; ++i) ket(i) = {phi[i].re, phi[i].im};
    const covnot::PureTwoQubitState state(ket);
    const covnot::Operator4 op = to_cpp(*rho);
    if (!covnot::is_hermitian(op)) throw covnot::InvalidArgument("rho is not Hermitian");
    *out = covnot::distance_to_complement(op, state.amplitudes());
  });
}

covnot_status covnot_random_pure_state(double alpha, covnot_rng* rng,
                                       covnot_complex out[4]) {
  COVNOT_REQUIRE(rng);
  COVNOT_REQUIRE(out);
  return guarded([&] {
    const auto psi = covnot::random_pure_state(alpha, rng->state);
    for (int i = 0; i < 4; ++i)
      out[i] = {psi.amplitudes()(i).real(), psi.amplitudes()(i).imag()};
  });
}

namespace {

void export_not(const covnot::MagicNotOperator& op, double* magic, covnot_op4* computational) {
  if (magic)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) magic[4 * i + j] = op.magic(i, j);
  if (computational) to_c(op.computational, computational);
}

}  // namespace

covnot_status covnot_perfect_not(const double coeffs[3], covnot_not_family family,
                                 double magic[16], covnot_op4* computational) {
  COVNOT_REQUIRE(coeffs);
  return guarded([&] {
    if (family != COVNOT_NOT_U && family != COVNOT_NOT_V)
      throw covnot::InvalidArgument("unknown NOT family");
    export_not(covnot::perfect_not_magic(
                   {coeffs[0], coeffs[1], coeffs[2]},
                   family == COVNOT_NOT_V ? covnot::NotFamily::V : covnot::NotFamily::U),
               magic, computational);
  });
}

covnot_status covnot_perfect_not_mixed(const double u_coeffs[3], const double v_coeffs[3],
                                       double magic[16], covnot_op4* computational) {
  COVNOT_REQUIRE(u_coeffs);
  COVNOT_REQUIRE(v_coeffs);
  return guarded([&] {
    export_not(covnot::perfect_not_magic({u_coeffs[0], u_coeffs[1], u_coeffs[2]},
                                         {v_coeffs[0], v_coeffs[1], v_coeffs[2]}),
               magic, computational);
  });
}

covnot_status covnot_magic_check(covnot_relation* relations, size_t capacity,
                                 size_t* count, int* all_hold) {
  COVNOT_REQUIRE(count);
  return guarded([&] {
    const auto report = covnot::magic_algebra_check();
    *count = report.relations.size();
    if (all_hold) *all_hold = report.all_hold() ? 1 : 0;
    if (!relations) return;
    for (size_t i = 0; i < std::min(capacity, report.relations.size()); ++i) {
      const auto& r = report.relations[i];
      covnot_relation& dst = relations[i];
      std::memset(dst.name, 0, sizeof dst.name);
      std::strncpy(dst.name, r.name.c_str(), sizeof dst.name - 1);
      dst.checked = r.checked;
      dst.failed = r.failed;
    }
  });
}

covnot_status covnot_probe_perfect_not(int operators, int states, covnot_rng* rng,
                                       covnot_perfect_not_probe* out) {
  COVNOT_REQUIRE(rng);
  COVNOT_REQUIRE(out);
  return guarded([&] {
    if (operators < 1 || states < 1)
      throw covnot::InvalidArgument("operators and states must be positive");
    *out = {operators, states, 0.0, 0.0, 0.0};
    std::vector<covnot::PureTwoQubitState> phis;
    phis.reserve(static_cast<size_t>(states));
    for (int s = 0; s < states; ++s)
      phis.push_back(covnot::random_pure_state(covnot::kMaxAlpha, rng->state));
    for (int k = 0; k < operators; ++k) {
      Eigen::Vector3d c(rng->state.normal(), rng->state.normal(), rng->state.normal());
      c.normalize();
      const auto op = covnot::perfect_not_magic(
          {c(0), c(1), c(2)}, k % 2 == 0 ? covnot::NotFamily::U : covnot::NotFamily::V);
      const covnot::Operator4& u = op.computational;
      out->max_square_defect = std::max(
          out->max_square_defect,
          covnot::max_abs_diff(u * u, -covnot::Operator4::Identity()));
      out->max_unitarity_defect = std::max(
          out->max_unitarity_defect,
          covnot::max_abs_diff(u * u.adjoint(), covnot::Operator4::Identity()));
      for (const auto& phi : phis) {
        const double e = std::abs(phi.amplitudes().dot(u * phi.amplitudes()));
        out->max_expectation = std::max(out->max_expectation, e);
      }
    }
  });
}

covnot_status covnot_kraus_create(const double* weights, const covnot_op4* ops,
                                  size_t n, covnot_kraus** out) {
  COVNOT_REQUIRE(weights);
  COVNOT_REQUIRE(ops);
  COVNOT_REQUIRE(out);
  return guarded([&] {
    if (n == 0) throw covnot::InvalidArgument("Kraus set must not be empty");
    std::vector<covnot::KrausTerm> terms;
    terms.reserve(n);
    for (size_t k = 0; k < n; ++k) {
      if (!std::isfinite(weights[k]) || weights[k] < 0.0)
        throw covnot::InvalidArgument("Kraus weights must be finite and nonnegative");
      terms.push_back({weights[k], to_cpp(ops[k])});
    }
    covnot::KrausSet set(std::move(terms));
    const double defect = set.trace_defect();
    if (!(defect <= 1e-8)) throw covnot::NotTracePreserving(defect);
    *out = new covnot_kraus{std::move(set)};
  });
}

covnot_status covnot_kraus_from_params(covnot_params p, covnot_kraus** out) {
  COVNOT_REQUIRE(out);
  return guarded([&] { *out = new covnot_kraus{covnot::kraus_set(to_cpp(p))}; });
}

covnot_status covnot_kraus_random(int rank, covnot_rng* rng, covnot_kraus** out) {
  COVNOT_REQUIRE(rng);
  COVNOT_REQUIRE(out);
  return guarded(
      [&] { *out = new covnot_kraus{covnot::random_kraus_set(rank, rng->state)}; });
}

void covnot_kraus_destroy(covnot_kraus* kraus) { delete kraus; }

size_t covnot_kraus_size(const covnot_kraus* kraus) {
  return kraus ? kraus->set.size() : 0;
}

covnot_status covnot_kraus_term(const covnot_kraus* kraus, size_t index,
                                double* weight, covnot_op4* op) {
  COVNOT_REQUIRE(kraus);
  return guarded([&] {
    if (index >= kraus->set.size()) throw covnot::OutOfRange("Kraus index out of range");
    const auto& term = kraus->set.terms()[index];
    if (weight) *weight = term.weight;
    if (op) to_c(term.op, op);
  });
}

covnot_status covnot_kraus_apply(const covnot_kraus* kraus, const covnot_op4* rho,
                                 covnot_op4* out) {
  COVNOT_REQUIRE(kraus);
  COVNOT_REQUIRE(rho);
  COVNOT_REQUIRE(out);
  return guarded([&] { to_c(kraus->set.apply(to_cpp(*rho)), out); });
}

covnot_status covnot_kraus_covariance(const covnot_kraus* kraus, int trials,
                                      covnot_rng* rng, double* max_deviation) {
  COVNOT_REQUIRE(kraus);
  COVNOT_REQUIRE(rng);
  COVNOT_REQUIRE(max_deviation);
  return guarded([&] {
    *max_deviation =
        covnot::check_covariance(kraus->set.as_function(), trials, rng->state)
            .max_deviation;
  });
}

covnot_status covnot_twirl_kraus(const covnot_kraus* kraus, size_t samples,
                                 size_t tasks, covnot_rng* rng,
                                 covnot_twirl_report* out) {
  COVNOT_REQUIRE(kraus);
  COVNOT_REQUIRE(rng);
  COVNOT_REQUIRE(out);
  return guarded([&] {
    const auto result =
        covnot::twirl(kraus->set.as_function(), samples, rng->state,
                      tasks == 0 ? covnot::kDefaultTwirlTasks : tasks);
    const auto cov = covnot::check_covariance(result.channel, 100, rng->state);
    out->params = to_c(result.extracted.params);
    out->residual = result.extracted.residual;
    out->covariance_deviation = cov.max_deviation;
    out->is_cp = result.cp.is_cp ? 1 : 0;
    out->is_cp_mc =
        covnot::cp_within(result.extracted.params, covnot::kTwirlParamTol) ? 1 : 0;
    std::copy(result.cp.margins.begin(), result.cp.margins.end(), out->margins);
    out->samples = result.samples;
    out->tasks = result.tasks;
  });
}

}  // extern "C"
