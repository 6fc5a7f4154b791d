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

#include "covnot/not_optimizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "covnot/error.hpp"
#include "covnot/parallel.hpp"

namespace covnot {

EntanglementClass::EntanglementClass(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= kMaxAlpha + 1e-15)) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " outside [0, 1/sqrt(2)]";
    throw OutOfRange(msg.str());
  }
  alpha_ = std::min(alpha, kMaxAlpha);
  beta_ = std::sqrt(1.0 - alpha_ * alpha_);
}

//=========================================================================
// Error measure
//=========================================================================

double distance_to_complement(const Operator4& rho, const Ket4& phi) {
  const Ket4 rho_phi = rho * phi;
  const double overlap = phi.dot(rho_phi).real();  // <phi|rho|phi>
  const double second = rho_phi.squaredNorm();     // <phi|rho^2|phi>
  return 2.0 * second - (2.0 / 3.0) * overlap * overlap;
}

double distance_to_complement(const DensityMatrix& rho,
                              const PureTwoQubitState& phi) {
  return distance_to_complement(rho.op(), phi.amplitudes());
}

double min_distance_oracle(const Operator4& rho, const Ket4& phi) {
  // Unitary whose first column is phi (up to phase); the rest span phi's
  // complement.
  Eigen::HouseholderQR<Eigen::Matrix<Complex, 4, 1>> qr(phi);
  const Operator4 frame = qr.householderQ();
  const Eigen::Matrix<Complex, 4, 3> complement = frame.rightCols<3>();

  const Eigen::Matrix3cd block = complement.adjoint() * rho * complement;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(block);
  const Eigen::Vector3d betas = solver.eigenvalues();
  const Eigen::Matrix<Complex, 4, 3> phis = complement * solver.eigenvectors();

  const double lambda1 = phi.dot(rho * phi).real();
  Operator4 sigma = Operator4::Zero();
  for (int i = 0; i < 3; ++i) {
    const double weight = betas(i) + lambda1 / 3.0;
    sigma += weight * (phis.col(i) * phis.col(i).adjoint());
  }
  const Operator4 diff = rho - sigma;
  return (diff * diff).trace().real();
}

double min_distance_oracle(const DensityMatrix& rho,
                           const PureTwoQubitState& phi) {
  return min_distance_oracle(rho.op(), phi.amplitudes());
}

double covariant_error(double Z, double Y, double alpha) {
  const double s = EntanglementClass(alpha).s();
  const double lead = 1.0 + Z * (1.0 - 4.0 * s) + Y * (1.0 + 8.0 * s);
  const double skew = Z - 2.0 * Y;
  return (lead * lead + 6.0 * s * (1.0 - 4.0 * s) * skew * skew) / 12.0;
}

//=========================================================================
// Closed-form optimum
//=========================================================================

std::string_view to_string(OptimalFamily f) {
  switch (f) {
    case OptimalFamily::SepPoint:
      return "sep-point";
    case OptimalFamily::LineSegment:
      return "line-segment";
    case OptimalFamily::MeLine:
      return "me-line";
    case OptimalFamily::InteriorRegression:
      return "interior-regression";
  }
  return "unknown";
}

double alpha0() {
  const double k = (8.0 - 3.0 * std::sqrt(6.0)) / 20.0;
  return std::sqrt((1.0 - std::sqrt(1.0 - 4.0 * k)) / 2.0);
}

double alpha_max() { return std::sqrt(0.5 - std::sqrt(3.0 / 20.0)); }

ErrorReport optimal_not(double alpha) {
  const EntanglementClass cls(alpha);
  const double s = cls.s();
  ErrorReport r;
  if (cls.alpha() <= alpha0()) {
    r.delta = (4.0 + 160.0 * s - 128.0 * s * s) / 243.0;
    r.point = u_sep();
    r.family = OptimalFamily::SepPoint;
    r.v_min = r.v_max = r.point.V;
    return r;
  }
  const double denom = -2.0 - 35.0 * s + 100.0 * s * s;
  const double y = -(1.0 / 3.0) * (2.0 - 31.0 * s + 20.0 * s * s) / denom;
  const double z = (2.0 / 3.0) * (4.0 - 29.0 * s - 20.0 * s * s) / denom;
  r.delta = 4.0 * s * (1.0 - 4.0 * s) / (2.0 + 35.0 * s - 100.0 * s * s);
  double v = z / 2.0;
  if (v < -1.0 / 3.0) v = -1.0 / 3.0;
  r.point = {v, z - v, y};
  // On the face 1+3X+3V+9Y = 0 the remaining margins reduce to
  // -1/3 <= V <= Z + 1/3.
  r.v_min = -1.0 / 3.0;
  r.v_max = std::min(1.0, z + 1.0 / 3.0);
  r.family = (cls.alpha() == kMaxAlpha) ? OptimalFamily::MeLine
                                        : OptimalFamily::LineSegment;
  return r;
}

//=========================================================================
// Numerical optimum
//=========================================================================

namespace {

using Vec3 = Eigen::Vector3d;

constexpr int kGridPoints = 68;  // spacing (4/3)/67 < 0.02
constexpr double kLow = -1.0 / 3.0;
constexpr double kHigh = 1.0;

double grid_coordinate(int k) {
  return kLow + (kHigh - kLow) * static_cast<double>(k) / (kGridPoints - 1);
}

struct Margin {
  double offset;
  Vec3 gradient;  // with respect to (V, X, Y)
};

const std::array<Margin, 4>& margins() {
  static const std::array<Margin, 4> m{
      Margin{1.0, Vec3(3.0, 3.0, 9.0)},
      Margin{1.0, Vec3(-1.0, 3.0, -3.0)},
      Margin{1.0, Vec3(3.0, -1.0, -3.0)},
      Margin{1.0, Vec3(-1.0, -1.0, 1.0)},
  };
  return m;
}

double margin_value(int k, const Vec3& x) {
  const Margin& m = margins()[static_cast<std::size_t>(k)];
  return m.offset + m.gradient.dot(x);
}

// Vertex k lies on every facet except facet k.
std::array<Vec3, 4> tetrahedron_vertices() {
  std::array<Vec3, 4> out;
  for (int k = 0; k < 4; ++k) {
    Eigen::Matrix3d a;
    Vec3 b;
    int row = 0;
    for (int j = 0; j < 4; ++j) {
      if (j == k) continue;
      a.row(row) = margins()[static_cast<std::size_t>(j)].gradient.transpose();
      b(row) = -margins()[static_cast<std::size_t>(j)].offset;
      ++row;
    }
    out[static_cast<std::size_t>(k)] = a.fullPivLu().solve(b);
  }
  return out;
}

class Objective {
 public:
  explicit Objective(double alpha) : alpha_(alpha) {}
  double operator()(const Vec3& x) const {
    return covariant_error(x(0) + x(1), x(2), alpha_);
  }

 private:
  double alpha_;
};

// Central differences are exact for quadratics up to rounding; a wide step
// keeps the rounding small.
constexpr double kFdStep = 0.25;

Vec3 gradient(const Objective& f, const Vec3& x) {
  Vec3 g;
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e(k) = kFdStep;
    g(k) = (f(x + e) - f(x - e)) / (2.0 * kFdStep);
  }
  return g;
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  Vec3 x = Vec3::Zero();
};

// Minimizes f over the face spanned by `verts` (1 to 4 vertices) using the
// exact quadratic model in barycentric offsets t; returns nothing useful
// when the min-norm stationary point falls outside the face.
Candidate minimize_on_face(const Objective& f, const std::vector<Vec3>& verts) {
  Candidate c;
  const Vec3& origin = verts.front();
  const int dim = static_cast<int>(verts.size()) - 1;
  if (dim == 0) {
    c.value = f(origin);
    c.x = origin;
    return c;
  }
  Eigen::MatrixXd dirs(3, dim);
  for (int k = 0; k < dim; ++k)
    dirs.col(k) = verts[static_cast<std::size_t>(k + 1)] - origin;

  const auto at = [&](const Eigen::VectorXd& t) -> double {
    return f(origin + dirs * t);
  };
  const double h = kFdStep;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(dim);
  const double f0 = at(zero);
  Eigen::VectorXd g(dim);
  Eigen::MatrixXd hess(dim, dim);
  std::vector<double> plus(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) {
    Eigen::VectorXd e = zero;
    e(k) = h;
    const double fp = at(e);
    const double fm = at(-e);
    plus[static_cast<std::size_t>(k)] = fp;
    g(k) = (fp - fm) / (2.0 * h);
    hess(k, k) = (fp - 2.0 * f0 + fm) / (h * h);
  }
  for (int k = 0; k < dim; ++k) {
    for (int l = k + 1; l < dim; ++l) {
      Eigen::VectorXd e = zero;
      e(k) = h;
      e(l) = h;
      hess(k, l) = hess(l, k) = (at(e) - plus[static_cast<std::size_t>(k)] -
                                 plus[static_cast<std::size_t>(l)] + f0) /
                                (h * h);
    }
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(hess);
  cod.setThreshold(1e-10);
  const Eigen::VectorXd t = cod.solve(-g);
  constexpr double kSlack = 1e-12;
  if ((t.array() < -kSlack).any() || t.sum() > 1.0 + kSlack) return c;
  c.x = origin + dirs * t;
  c.value = f(c.x);
  return c;
}

// Faces are named by the set of facets they lie on (bit k = facet k).
std::vector<Vec3> face_vertices(unsigned facet_mask,
                                const std::array<Vec3, 4>& vertices) {
  std::vector<Vec3> out;
  for (unsigned k = 0; k < 4; ++k)
    if (!(facet_mask & (1u << k))) out.push_back(vertices[k]);
  return out;
}

Candidate refine(const Objective& f, const std::array<Vec3, 4>& vertices,
                 unsigned active_mask, bool everything) {
  Candidate best;
  for (unsigned mask = 0; mask < 16; ++mask) {
    if (std::popcount(mask) == 4) continue;
    const bool in_active = active_mask == 0 ? mask == 0 : (mask & active_mask) != 0;
    if (!everything && !in_active) continue;
    const Candidate c = minimize_on_face(f, face_vertices(mask, vertices));
    if (c.value < best.value) best = c;
  }
  return best;
}

double kkt_violation(const Objective& f, const Vec3& x,
                     const std::array<Vec3, 4>& vertices) {
  const Vec3 g = gradient(f, x);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) worst = std::max(worst, -g.dot(v - x));
  return worst;
}

OptimalFamily classify(const Vec3& x) {
  const ChannelParams b = u_sep();
  if ((x - Vec3(b.V, b.X, b.Y)).norm() < 1e-6) return OptimalFamily::SepPoint;
  const double z = x(0) + x(1);
  if (std::abs(x(2) + 1.0 / 3.0) < 1e-6 && std::abs(z - 2.0 / 3.0) < 1e-6)
    return OptimalFamily::MeLine;
  if (std::abs(margin_value(0, x)) < 1e-8) return OptimalFamily::LineSegment;
  return OptimalFamily::InteriorRegression;
}

}  // namespace

NumericalOptimum numerical_optimal_not(double alpha) {
  const EntanglementClass cls(alpha);
  const Objective f(cls.alpha());

  struct Slice {
    double value = std::numeric_limits<double>::infinity();
    Vec3 x = Vec3::Zero();
    std::size_t count = 0;
  };
  std::vector<Slice> slices(kGridPoints);
  parallel::for_each_task(kGridPoints, [&](std::size_t iv) {
    Slice best;
    const double v = grid_coordinate(static_cast<int>(iv));
    for (int ix = 0; ix < kGridPoints; ++ix) {
      const double x = grid_coordinate(ix);
      for (int iy = 0; iy < kGridPoints; ++iy) {
        const Vec3 p(v, x, grid_coordinate(iy));
        bool feasible = true;
        for (int k = 0; k < 4 && feasible; ++k)
          feasible = margin_value(k, p) >= -kCpTol;
        if (!feasible) continue;
        ++best.count;
        const double val = f(p);
        if (val < best.value) {
          best.value = val;
          best.x = p;
        }
      }
    }
    slices[iv] = best;
  });

  Slice grid;
  std::size_t total = 0;
  for (const auto& s : slices) {
    total += s.count;
    if (s.value < grid.value) grid = s;
  }

  // A facet counts as active when the grid minimum is within a couple of
  // grid diagonals of it.
  const double spacing = (kHigh - kLow) / (kGridPoints - 1);
  unsigned active = 0;
  for (int k = 0; k < 4; ++k) {
    const double distance =
        margin_value(k, grid.x) / margins()[static_cast<std::size_t>(k)].gradient.norm();
    if (distance <= 2.0 * std::sqrt(3.0) * spacing) active |= 1u << k;
  }

  const auto vertices = tetrahedron_vertices();
  Candidate best = refine(f, vertices, active, false);
  double violation = best.value < std::numeric_limits<double>::infinity()
                         ? kkt_violation(f, best.x, vertices)
                         : std::numeric_limits<double>::infinity();
  if (violation > 1e-10) {
    best = refine(f, vertices, active, true);
    violation = kkt_violation(f, best.x, vertices);
  }

  NumericalOptimum out;
  out.grid_delta = grid.value;
  out.grid_point = {grid.x(0), grid.x(1), grid.x(2)};
  out.grid_points = total;
  out.active_mask = active;
  out.kkt_violation = violation;
  out.report.delta = best.value;
  out.report.point = {best.x(0), best.x(1), best.x(2)};
  out.report.family = classify(best.x);
  out.report.v_min = out.report.v_max = best.x(0);
  return out;
}

//=========================================================================
// Perfect NOT operators
//=========================================================================

namespace {

IntMatrix4 int_identity() {
  IntMatrix4 m{};
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = 1;
  return m;
}

IntMatrix4 int_mul(const IntMatrix4& a, const IntMatrix4& b) {
  IntMatrix4 c{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

IntMatrix4 int_transpose(const IntMatrix4& a) {
  IntMatrix4 t{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t[i][j] = a[j][i];
  return t;
}

IntMatrix4 int_lin(int ca, const IntMatrix4& a, int cb, const IntMatrix4& b) {
  IntMatrix4 c{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) c[i][j] = ca * a[i][j] + cb * b[i][j];
  return c;
}

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

const std::array<IntMatrix4, 3> kU{{
    {{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}},
    {{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}}},
    {{{0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}}},
}};

const std::array<IntMatrix4, 3> kV{{
    {{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}},
    {{{0, 0, 0, 1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}}},
    {{{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}}},
}};

void check_family(const std::array<IntMatrix4, 3>& g, const std::string& name,
                  MagicAlgebraReport& report) {
  const IntMatrix4 id = int_identity();
  const IntMatrix4 zero{};
  AlgebraRelation anti_dag{"{" + name + "_i, " + name + "_j^dag} = 2 delta_ij I"};
  AlgebraRelation anti{"-{" + name + "_i, " + name + "_j} = 2 delta_ij I"};
  AlgebraRelation antisym{name + "_i^T = -" + name + "_i"};
  AlgebraRelation product{name + "_i " + name + "_j = -delta_ij I + eps_ijk " +
                          name + "_k"};
  for (int i = 0; i < 3; ++i) {
    const IntMatrix4& gi = g[static_cast<std::size_t>(i)];
    ++antisym.checked;
    if (int_transpose(gi) != int_lin(-1, gi, 0, zero)) ++antisym.failed;
    for (int j = 0; j < 3; ++j) {
      const IntMatrix4& gj = g[static_cast<std::size_t>(j)];
      const int delta = (i == j) ? 1 : 0;
      const IntMatrix4 expected_anti = int_lin(2 * delta, id, 0, zero);

      ++anti_dag.checked;
      const IntMatrix4 gj_dag = int_transpose(gj);
      if (int_lin(1, int_mul(gi, gj_dag), 1, int_mul(gj_dag, gi)) != expected_anti)
        ++anti_dag.failed;

      ++anti.checked;
      if (int_lin(-1, int_mul(gi, gj), -1, int_mul(gj, gi)) != expected_anti)
        ++anti.failed;

      ++product.checked;
      IntMatrix4 expected = int_lin(-delta, id, 0, zero);
      for (int k = 0; k < 3; ++k)
        expected = int_lin(1, expected, levi_civita(i, j, k),
                           g[static_cast<std::size_t>(k)]);
      if (int_mul(gi, gj) != expected) ++product.failed;
    }
  }
  report.relations.push_back(anti_dag);
  report.relations.push_back(anti);
  report.relations.push_back(antisym);
  report.relations.push_back(product);
}

}  // namespace

const std::array<IntMatrix4, 3>& magic_generators(NotFamily family) {
  return family == NotFamily::U ? kU : kV;
}

MagicNotOperator perfect_not_magic(const std::array<double, 3>& coeffs,
                                   NotFamily family) {
  double norm2 = 0.0;
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw InvalidArgument("coefficients must be finite");
    norm2 += c * c;
  }
  if (std::abs(std::sqrt(norm2) - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << "coefficient vector has norm " << std::sqrt(norm2) << ", expected 1";
    throw NonUnitNorm(msg.str());
  }
  MagicNotOperator op;
  op.coeffs = coeffs;
  op.family = family;
  op.magic.setZero();
  const auto& gens = magic_generators(family);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        op.magic(static_cast<int>(i), static_cast<int>(j)) += coeffs[k] * gens[k][i][j];
  const Operator4& e = magic_to_computational();
  op.computational = e * op.magic.cast<Complex>() * e.adjoint();
  return op;
}

MagicNotOperator perfect_not_magic(const std::array<double, 3>& u_coeffs,
                                   const std::array<double, 3>& v_coeffs) {
  const auto nonzero = [](const std::array<double, 3>& c) {
    return std::any_of(c.begin(), c.end(), [](double x) { return x != 0.0; });
  };
  const bool has_u = nonzero(u_coeffs);
  const bool has_v = nonzero(v_coeffs);
  if (has_u && has_v)
    throw MixedFamilies("U and V coefficients cannot both be nonzero");
  return has_v ? perfect_not_magic(v_coeffs, NotFamily::V)
               : perfect_not_magic(u_coeffs, NotFamily::U);
}

bool MagicAlgebraReport::all_hold() const {
  return std::all_of(relations.begin(), relations.end(),
                     [](const AlgebraRelation& r) { return r.holds(); });
}

MagicAlgebraReport magic_algebra_check() {
  MagicAlgebraReport report;
  check_family(kU, "U", report);
  check_family(kV, "V", report);
  AlgebraRelation commute{"[U_i, V_j] = 0"};
  for (const auto& u : kU) {
    for (const auto& v : kV) {
      ++commute.checked;
      if (int_mul(u, v) != int_mul(v, u)) ++commute.failed;
    }
  }
  report.relations.push_back(commute);
  return report;
}

//=========================================================================
// Named channels
//=========================================================================

Operator2 OneQubitUnot::apply(const Operator2& a) const {
  return (2.0 * a.trace() * Operator2::Identity() - a) / 3.0;
}

Operator4 apply_factorwise(const OneQubitUnot& u1, const OneQubitUnot& u2,
                           const Operator4& op) {
  Operator4 out = Operator4::Zero();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Complex c =
          (pauli::product(a, b).transpose().cwiseProduct(op)).sum() / 4.0;
      out += c * tensor_product(u1.apply(pauli::sigma(a)), u2.apply(pauli::sigma(b)));
    }
  }
  return out;
}

ChannelParams u_sep() { return {-1.0 / 3.0, -1.0 / 3.0, 1.0 / 9.0}; }

ChannelParams g_not() { return {-1.0 / 15.0, -1.0 / 15.0, -1.0 / 15.0}; }

ChannelParams u_me(double v) {
  if (!(v >= -1.0 / 3.0 - 1e-15 && v <= 1.0 + 1e-15)) {
    std::ostringstream msg;
    msg << "U_ME parameter V = " << v << " outside [-1/3, 1]";
    throw OutOfRange(msg.str());
  }
  return {v, 2.0 / 3.0 - v, -1.0 / 3.0};
}

}  // namespace covnot
