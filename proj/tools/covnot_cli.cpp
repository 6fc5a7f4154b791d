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

// covnot command-line front end. Talks to the library only through the C
// interface.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "covnot/covnot.h"
#include "json.hpp"

namespace {

enum ExitCode : int { kSuccess = 0, kNegative = 1, kUsage = 2, kInternal = 3 };

using Value = std::variant<double, long long, std::string, bool>;

struct Field {
  std::string key;
  Value value;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

struct Report {
  std::vector<Field> fields;
  std::optional<Table> table;

  void add(std::string key, Value v) { fields.push_back({std::move(key), std::move(v)}); }
};

// Thrown for problems that map onto an exit code.
struct CliFailure {
  int code;
  std::string message;
};

struct CommonOptions {
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 1;
};

std::string format_double(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string csv_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(x, 12);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if (x.find_first_of(",\"\n") == std::string::npos) {
          return x;
        } else {
          std::string q = "\"";
          for (char ch : x) q += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
          return q + "\"";
        }
      },
      v);
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(x) ? format_double(x, 17) : "null";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else {
          return json_string(x);
        }
      },
      v);
}

void json_object(std::ostream& os, const std::vector<std::string>& keys,
                 const std::vector<Value>& values, const std::string& indent) {
  os << '{';
  for (std::size_t k = 0; k < keys.size(); ++k)
    os << (k ? "," : "") << '\n' << indent << "  " << json_string(keys[k]) << ": "
       << json_value(values[k]);
  os << '\n' << indent << '}';
}

std::string render(const Report& r, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    os << '{';
    for (std::size_t k = 0; k < r.fields.size(); ++k)
      os << (k ? "," : "") << "\n  " << json_string(r.fields[k].key) << ": "
         << json_value(r.fields[k].value);
    if (r.table) {
      os << (r.fields.empty() ? "" : ",") << "\n  \"records\": [";
      for (std::size_t i = 0; i < r.table->rows.size(); ++i) {
        os << (i ? "," : "") << "\n    ";
        json_object(os, r.table->columns, r.table->rows[i], "    ");
      }
      os << (r.table->rows.empty() ? "]" : "\n  ]");
    }
    os << "\n}\n";
    return os.str();
  }
  for (const auto& f : r.fields) os << f.key << ',' << csv_value(f.value) << '\n';
  if (r.table) {
    if (!r.fields.empty()) os << '\n';
    for (std::size_t c = 0; c < r.table->columns.size(); ++c)
      os << (c ? "," : "") << r.table->columns[c];
    os << '\n';
    for (const auto& row : r.table->rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_value(row[c]);
      os << '\n';
    }
  }
  return os.str();
}

void emit(const Report& r, const CommonOptions& opt) {
  const std::string text = render(r, opt.format);
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary | std::ios::trunc);
  if (!file) throw CliFailure{kUsage, "cannot open output file: " + opt.out};
  file << text;
  if (!file.flush()) throw CliFailure{kUsage, "failed writing output file: " + opt.out};
}

int status_exit_code(covnot_status s) {
  switch (s) {
    case COVNOT_OK:
      return kSuccess;
    case COVNOT_ERR_NOT_CP:
      return kNegative;
    case COVNOT_ERR_INTERNAL:
      return kInternal;
    default:
      return kUsage;
  }
}

void check(covnot_status s) {
  if (s != COVNOT_OK)
    throw CliFailure{status_exit_code(s), std::string(covnot_status_name(s)) + ": " +
                                              covnot_last_error_message()};
}

struct RngDeleter {
  void operator()(covnot_rng* r) const { covnot_rng_destroy(r); }
};
struct KrausDeleter {
  void operator()(covnot_kraus* k) const { covnot_kraus_destroy(k); }
};
using RngPtr = std::unique_ptr<covnot_rng, RngDeleter>;
using KrausPtr = std::unique_ptr<covnot_kraus, KrausDeleter>;

RngPtr make_rng(std::uint64_t seed) {
  covnot_rng* raw = nullptr;
  check(covnot_rng_create(seed, 0, &raw));
  return RngPtr(raw);
}

void add_params(Report& r, const covnot_params& p) {
  r.add("V", p.V);
  r.add("X", p.X);
  r.add("Y", p.Y);
}

//=========================================================================
// Subcommands
//=========================================================================

int cmd_validate(const covnot_params& p, const CommonOptions& opt) {
  int is_cp = 0;
  double margins[4];
  check(covnot_cp_check(p, &is_cp, margins));
  double spectrum[16];
  check(covnot_choi_spectrum(p, spectrum));
  double weights[4];
  check(covnot_decompose(p, weights));

  Report r;
  add_params(r, p);
  r.add("cp", is_cp != 0);
  for (int k = 0; k < 4; ++k) r.add("margin" + std::to_string(k + 1), margins[k]);
  r.add("choi_min_eigenvalue", spectrum[0]);
  for (int k = 0; k < 4; ++k) r.add("a" + std::to_string(k + 1), weights[k]);
  emit(r, opt);
  return is_cp ? kSuccess : kNegative;
}

int cmd_apply(const covnot_params& p, double alpha, const CommonOptions& opt) {
  if (!(alpha >= 0.0 && alpha <= std::sqrt(0.5)))
    throw CliFailure{kUsage, "--alpha must lie in [0, 1/sqrt(2)]"};
  int is_cp = 0;
  check(covnot_cp_check(p, &is_cp, nullptr));
  if (!is_cp) throw CliFailure{kNegative, "parameters are not completely positive"};

  const double beta = std::sqrt(1.0 - alpha * alpha);
  covnot_complex phi[4] = {{alpha, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {beta, 0.0}};
  covnot_op4 rho{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho.m[4 * i + j] = {phi[i].re * phi[j].re, 0.0};
  covnot_op4 out{};
  check(covnot_apply(p, &rho, &out));
  double distance = 0.0;
  check(covnot_distance_to_complement(&out, phi, &distance));

  Report r;
  add_params(r, p);
  r.add("alpha", alpha);
  r.add("distance_to_complement", distance);
  Table t{{"row", "col", "re", "im"}, {}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const covnot_complex& c = out.m[4 * i + j];
      t.rows.push_back({static_cast<long long>(i), static_cast<long long>(j), c.re, c.im});
    }
  r.table = std::move(t);
  emit(r, opt);
  return kSuccess;
}

int cmd_choi(const covnot_params& p, const CommonOptions& opt) {
  double spectrum[16];
  check(covnot_choi_spectrum(p, spectrum));
  double closed[4];
  int mult[4];
  check(covnot_choi_closed_form(p, closed, mult));
  int is_cp = 0;
  check(covnot_cp_check(p, &is_cp, nullptr));

  Report r;
  add_params(r, p);
  r.add("cp", is_cp != 0);
  r.add("min_eigenvalue", spectrum[0]);
  for (int k = 0; k < 4; ++k) {
    r.add("closed_form" + std::to_string(k + 1), closed[k]);
    r.add("multiplicity" + std::to_string(k + 1), static_cast<long long>(mult[k]));
  }
  Table t{{"index", "eigenvalue"}, {}};
  for (int k = 0; k < 16; ++k) t.rows.push_back({static_cast<long long>(k), spectrum[k]});
  r.table = std::move(t);
  emit(r, opt);
  return kSuccess;
}

int cmd_decompose(const covnot_params& p, const CommonOptions& opt) {
  double w[4];
  check(covnot_decompose(p, w));
  covnot_params back{};
  check(covnot_reconstruct(w, &back));
  int is_cp = 0;
  check(covnot_cp_check(p, &is_cp, nullptr));

  Report r;
  add_params(r, p);
  r.add("cp", is_cp != 0);
  r.add("a1_identity", w[0]);
  r.add("a2_u_sep", w[1]);
  r.add("a3_u_me1", w[2]);
  r.add("a4_u_me2", w[3]);
  r.add("weight_sum", w[0] + w[1] + w[2] + w[3]);
  r.add("reconstruction_error", std::max({std::abs(back.V - p.V), std::abs(back.X - p.X),
                                          std::abs(back.Y - p.Y)}));
  emit(r, opt);
  return kSuccess;
}

int cmd_optimize(double alpha, bool numerical, const CommonOptions& opt) {
  covnot_error_report a{};
  check(covnot_optimal_not(alpha, &a));
  Report r;
  r.add("alpha", alpha);
  r.add("delta", a.delta);
  add_params(r, a.point);
  r.add("branch", std::string(covnot_family_name(a.family)));
  r.add("v_min", a.v_min);
  r.add("v_max", a.v_max);
  r.add("alpha0", covnot_alpha0());
  r.add("alpha_max", covnot_alpha_max());
  if (numerical) {
    covnot_numerical_optimum n{};
    check(covnot_numerical_optimal_not(alpha, &n));
    r.add("numerical_delta", n.report.delta);
    r.add("numerical_V", n.report.point.V);
    r.add("numerical_X", n.report.point.X);
    r.add("numerical_Y", n.report.point.Y);
    r.add("numerical_branch", std::string(covnot_family_name(n.report.family)));
    r.add("grid_delta", n.grid_delta);
    r.add("grid_points", static_cast<long long>(n.grid_points));
    r.add("kkt_violation", n.kkt_violation);
    r.add("abs_difference", std::abs(n.report.delta - a.delta));
  }
  emit(r, opt);
  return kSuccess;
}

struct SweepConfig {
  double alpha_min = 0.0;
  double alpha_max = std::sqrt(0.5);
  int points = 101;
};

int cmd_sweep(const SweepConfig& cfg, const CommonOptions& opt) {
  if (!(cfg.alpha_min >= 0.0 && cfg.alpha_min < cfg.alpha_max &&
        cfg.alpha_max <= std::sqrt(0.5)))
    throw CliFailure{kUsage, "need 0 <= alpha-min < alpha-max <= 1/sqrt(2)"};
  if (cfg.points < 2) throw CliFailure{kUsage, "--points must be at least 2"};

  const covnot_params sep = covnot_u_sep();
  const covnot_params gnot = covnot_g_not();
  Table t{{"alpha", "delta_opt", "V", "X", "Y", "branch", "delta_usep", "delta_ume",
           "delta_gnot"},
          {}};
  for (int k = 0; k < cfg.points; ++k) {
    const double alpha =
        (k == cfg.points - 1)
            ? cfg.alpha_max
            : cfg.alpha_min + (cfg.alpha_max - cfg.alpha_min) * k / (cfg.points - 1);
    covnot_error_report rep{};
    check(covnot_optimal_not(alpha, &rep));
    double d_sep = 0.0, d_me = 0.0, d_gnot = 0.0;
    check(covnot_covariant_error(sep.V + sep.X, sep.Y, alpha, &d_sep));
    // Every member of the U_ME family has Z = 2/3, Y = -1/3.
    check(covnot_covariant_error(2.0 / 3.0, -1.0 / 3.0, alpha, &d_me));
    check(covnot_covariant_error(gnot.V + gnot.X, gnot.Y, alpha, &d_gnot));
    t.rows.push_back({alpha, rep.delta, rep.point.V, rep.point.X, rep.point.Y,
                      std::string(covnot_family_name(rep.family)), d_sep, d_me, d_gnot});
  }
  Report r;
  r.table = std::move(t);
  emit(r, opt);
  return kSuccess;
}

KrausPtr load_kraus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliFailure{kUsage, "cannot read Kraus file: " + path};
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw CliFailure{kUsage, std::string("malformed Kraus file: ") + e.what()};
  }
  const auto bad = [&](const std::string& why) {
    return CliFailure{kUsage, "malformed Kraus file: " + why};
  };
  if (!doc.is_array() || doc.empty()) throw bad("expected a non-empty array");
  std::vector<double> weights;
  std::vector<covnot_op4> ops;
  for (const auto& term : doc) {
    if (!term.is_object() || !term.contains("weight") || !term.contains("matrix"))
      throw bad("each term needs 'weight' and 'matrix'");
    if (!term["weight"].is_number()) throw bad("'weight' must be a number");
    const auto& m = term["matrix"];
    if (!m.is_array() || m.size() != 4) throw bad("'matrix' must have 4 rows");
    covnot_op4 op{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (!m[i].is_array() || m[i].size() != 4) throw bad("each row must have 4 entries");
      for (std::size_t j = 0; j < 4; ++j) {
        const auto& c = m[i][j];
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
          throw bad("entries must be [re, im]");
        op.m[4 * i + j] = {c[0].get<double>(), c[1].get<double>()};
      }
    }
    weights.push_back(term["weight"].get<double>());
    ops.push_back(op);
  }
  covnot_kraus* raw = nullptr;
  check(covnot_kraus_create(weights.data(), ops.data(), ops.size(), &raw));
  return KrausPtr(raw);
}

int cmd_twirl(const std::string& path, long long samples, long long tasks,
              const CommonOptions& opt) {
  if (samples < 1) throw CliFailure{kUsage, "--samples must be positive"};
  if (tasks < 1) throw CliFailure{kUsage, "--tasks must be positive"};
  KrausPtr kraus = load_kraus(path);
  RngPtr rng = make_rng(opt.seed);
  double original_dev = 0.0;
  check(covnot_kraus_covariance(kraus.get(), 100, rng.get(), &original_dev));
  covnot_twirl_report rep{};
  check(covnot_twirl_kraus(kraus.get(), static_cast<std::size_t>(samples),
                           static_cast<std::size_t>(tasks), rng.get(), &rep));
  Report r;
  r.add("kraus_terms", static_cast<long long>(covnot_kraus_size(kraus.get())));
  r.add("original_covariance_deviation", original_dev);
  add_params(r, rep.params);
  r.add("extraction_residual", rep.residual);
  r.add("covariance_deviation", rep.covariance_deviation);
  for (int k = 0; k < 4; ++k) r.add("margin" + std::to_string(k + 1), rep.margins[k]);
  r.add("cp_strict", rep.is_cp != 0);
  r.add("cp", rep.is_cp_mc != 0);
  r.add("samples", static_cast<long long>(rep.samples));
  r.add("tasks", static_cast<long long>(rep.tasks));
  r.add("seed", std::to_string(opt.seed));
  emit(r, opt);
  return rep.is_cp_mc ? kSuccess : kNegative;
}

int cmd_magic(int operators, int states, const CommonOptions& opt) {
  std::size_t count = 0;
  int all_hold = 0;
  check(covnot_magic_check(nullptr, 0, &count, &all_hold));
  std::vector<covnot_relation> rel(count);
  check(covnot_magic_check(rel.data(), rel.size(), &count, &all_hold));
  RngPtr rng = make_rng(opt.seed);
  covnot_perfect_not_probe probe{};
  check(covnot_probe_perfect_not(operators, states, rng.get(), &probe));

  Report r;
  r.add("all_relations_hold", all_hold != 0);
  r.add("operators", static_cast<long long>(probe.operators));
  r.add("states", static_cast<long long>(probe.states));
  r.add("max_expectation", probe.max_expectation);
  r.add("max_square_defect", probe.max_square_defect);
  r.add("max_unitarity_defect", probe.max_unitarity_defect);
  Table t{{"relation", "checked", "failed"}, {}};
  for (const auto& x : rel)
    t.rows.push_back({std::string(x.name), static_cast<long long>(x.checked),
                      static_cast<long long>(x.failed)});
  r.table = std::move(t);
  emit(r, opt);
  return all_hold ? kSuccess : kNegative;
}

void add_common(CLI::App* sub, CommonOptions& opt) {
  sub->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", opt.out, "Output path (default: stdout)");
  sub->add_option("--seed", opt.seed, "Random seed");
}

void add_params_options(CLI::App* sub, covnot_params& p, bool required) {
  auto* v = sub->add_option("-V", p.V, "Scale of the first-qubit Bloch vector");
  auto* x = sub->add_option("-X", p.X, "Scale of the second-qubit Bloch vector");
  auto* y = sub->add_option("-Y", p.Y, "Scale of the correlation tensor");
  if (required) {
    v->required();
    x->required();
    y->required();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covariant two-qubit channels and optimal quantum NOT"};
  app.require_subcommand(1);
  app.set_version_flag("--version", covnot_version());

  CommonOptions opt;
  covnot_params p{1.0, 1.0, 1.0};
  double alpha = 0.0;
  bool numerical = false;
  SweepConfig sweep;
  std::string kraus_path;
  long long samples = 100000;
  long long tasks = 16;
  int operators = 20;
  int states = 1000;

  auto* validate = app.add_subcommand("validate", "Check complete positivity of (V, X, Y)");
  add_params_options(validate, p, true);
  add_common(validate, opt);

  auto* apply = app.add_subcommand(
      "apply", "Apply the channel to alpha|uu> + beta|dd> and print the output matrix");
  add_params_options(apply, p, true);
  apply->add_option("--alpha", alpha, "Entanglement parameter in [0, 1/sqrt(2)]");
  add_common(apply, opt);

  auto* choi = app.add_subcommand("choi", "Choi-matrix spectrum");
  add_params_options(choi, p, true);
  add_common(choi, opt);

  auto* decompose = app.add_subcommand("decompose", "Convex weights on the four corners");
  add_params_options(decompose, p, true);
  add_common(decompose, opt);

  auto* optimize = app.add_subcommand("optimize-not", "Optimal covariant NOT for one alpha");
  optimize->add_option("--alpha", alpha, "Entanglement parameter")->required();
  optimize->add_flag("--numerical", numerical, "Also run the numerical optimizer");
  add_common(optimize, opt);

  auto* sw = app.add_subcommand("sweep", "Optimal and reference NOT errors over alpha");
  sw->add_option("--alpha-min", sweep.alpha_min, "Smallest alpha");
  sw->add_option("--alpha-max", sweep.alpha_max, "Largest alpha");
  sw->add_option("--points", sweep.points, "Number of alpha values");
  add_common(sw, opt);

  auto* tw = app.add_subcommand("twirl", "Twirl a Kraus channel over local unitaries");
  tw->add_option("--kraus", kraus_path, "JSON Kraus file")->required();
  tw->add_option("--samples", samples, "Monte-Carlo samples");
  tw->add_option("--tasks", tasks, "Independent random streams");
  add_common(tw, opt);

  auto* magic = app.add_subcommand("magic-check", "Perfect NOT operators in the magic basis");
  magic->add_option("--operators", operators, "Random NOT operators to probe");
  magic->add_option("--states", states, "Random maximally entangled states");
  add_common(magic, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(p, opt);
    if (apply->parsed()) return cmd_apply(p, alpha, opt);
    if (choi->parsed()) return cmd_choi(p, opt);
    if (decompose->parsed()) return cmd_decompose(p, opt);
    if (optimize->parsed()) return cmd_optimize(alpha, numerical, opt);
    if (sw->parsed()) return cmd_sweep(sweep, opt);
    if (tw->parsed()) return cmd_twirl(kraus_path, samples, tasks, opt);
    if (magic->parsed()) return cmd_magic(operators, states, opt);
  } catch (const CliFailure& f) {
    std::cerr << "covnot: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "covnot: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
