/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

// semiop — compute (A,lambda)-seminorm quantities of complex operators,
// decide Birkhoff-James orthogonality with respect to them, and run the
// randomized verification suites.
//
// Exit codes are part of the interface:
//   0 success / verdict printed
//   1 verification suite reported failures
//   2 usage or parse error
//   3 the A file is not Hermitian positive semidefinite
//   4 the operator has no finite A-seminorm (not A^{1/2}-adjointable)
//   5 output file cannot be written

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "semiop/harness.hpp"
#include "semiop/matrix_io.hpp"

namespace {

using namespace semiop;

std::string fmt12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

std::string fmt_vector(const Vector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt_complex(v[i]);
  }
  out += "]";
  return out;
}

struct CommonArgs {
  std::string a_path;
  std::uint64_t seed = 1;
  int restarts = 32;
};

std::uint64_t default_seed() {
  // SEMIOP_SEED overrides the built-in default; an explicit --seed flag wins
  // over both.
  if (const char* env = std::getenv("SEMIOP_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 1;
}

PositiveOperator load_positive(const std::string& path, std::size_t dim_hint) {
  if (path.empty()) return make_positive(ComplexMatrix::identity(dim_hint));
  return make_positive(read_matrix_file(path));
}

OptimizerConfig make_config(const CommonArgs& args) {
  OptimizerConfig cfg;
  cfg.seed = args.seed;
  cfg.restarts = args.restarts;
  return cfg;
}

int run_compute(const std::string& op_path, const CommonArgs& args, const std::string& quantity,
                std::optional<double> lambda_opt) {
  const ComplexMatrix t = read_matrix_file(op_path);
  const PositiveOperator a = load_positive(args.a_path, t.dim());
  if (t.dim() != a.dim()) throw MatrixIoError("operator and A have different dimensions");
  const OptimizerConfig cfg = make_config(args);

  EvalResult res;
  if (quantity == "seminorm" || quantity == "m") {
    if (!lambda_opt) throw CLI::ValidationError("--lambda is required for quantity " + quantity);
    const Lambda lambda(*lambda_opt);
    res = quantity == "seminorm" ? seminorm(t, a, lambda, cfg) : m_lambda(t, a, lambda, cfg);
  } else if (quantity == "wa") {
    res = a_numerical_radius(t, a, cfg);
  } else if (quantity == "ca") {
    res = a_crawford(t, a, cfg);
  } else if (quantity == "minmod") {
    res = a_min_modulus(t, a, cfg);
  } else {
    throw CLI::ValidationError("unknown quantity: " + quantity);
  }

  std::cout << "quantity = " << quantity << "\n";
  if (lambda_opt) std::cout << "lambda = " << fmt12(*lambda_opt) << "\n";
  std::cout << "value = " << fmt12(res.value) << "\n";
  std::cout << "certified = " << (res.certified ? "true" : "false") << "\n";
  std::cout << "witness = " << fmt_vector(res.witness_lift) << "\n";
  std::cout << "restarts_used = " << res.restarts_used << "\n";
  std::cout << "stationarity_residual = " << fmt12(res.stationarity_residual) << "\n";
  return 0;
}

int run_sweep(const std::string& op_path, const CommonArgs& args, int steps,
              const std::string& out_path) {
  const ComplexMatrix t = read_matrix_file(op_path);
  const PositiveOperator a = load_positive(args.a_path, t.dim());
  if (t.dim() != a.dim()) throw MatrixIoError("operator and A have different dimensions");
  const OptimizerConfig cfg = make_config(args);

  const ComplexMatrix b = reduce(t, a).b;
  const double w = a_numerical_radius(t, a, cfg).value;
  const double norm_a = b.dim() > 0 ? svd_extremes(b).sigma_max : 0.0;

  std::ofstream out(out_path, std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return 5;
  }
  out << "lambda,seminorm,w_a,norm_a,certified\n";
  for (int j = 0; j < steps; ++j) {
    const double lam = static_cast<double>(j) / (steps - 1);
    const EvalResult res = seminorm(t, a, Lambda(lam), cfg);
    out << fmt12(lam) << "," << fmt12(res.value) << "," << fmt12(w) << "," << fmt12(norm_a) << ","
        << (res.certified ? "true" : "false") << "\n";
  }
  if (!out) {
    std::cerr << "error: failed writing output file: " << out_path << "\n";
    return 5;
  }
  std::cout << "wrote " << steps << " rows to " << out_path << "\n";
  return 0;
}

int run_orth(const std::string& t_path, const std::string& s_path, const CommonArgs& args,
             double lambda_value, double tolerance) {
  const ComplexMatrix t = read_matrix_file(t_path);
  const ComplexMatrix s = read_matrix_file(s_path);
  const PositiveOperator a = load_positive(args.a_path, t.dim());
  if (t.dim() != a.dim() || s.dim() != a.dim())
    throw MatrixIoError("operators and A have different dimensions");
  const Lambda lambda(lambda_value);
  const OptimizerConfig cfg = make_config(args);

  const OrthogonalityVerdict v = bj_orthogonal(t, s, a, lambda, cfg, tolerance);
  const CertificateReport cert = certificate_check(t, s, a, lambda, v, 96, cfg);

  std::cout << "orthogonal = " << (v.orthogonal ? "true" : "false") << "\n";
  std::cout << "xi_star = " << fmt_complex(v.xi_star) << "\n";
  std::cout << "rho_zero = " << fmt12(v.rho_zero) << "\n";
  std::cout << "rho_min = " << fmt12(v.rho_min) << "\n";
  std::cout << "relative_gap = " << fmt12(v.relative_gap) << "\n";
  std::cout << "m_value = " << fmt12(v.m_value) << "\n";
  std::cout << "tolerance = " << fmt12(v.tolerance_used) << "\n";
  if (cert.applicable)
    std::cout << "certificate = " << (cert.passed ? "passed" : "FAILED")
              << " (worst margin " << fmt12(cert.worst_margin) << " over " << cert.samples
              << " samples)\n";
  else
    std::cout << "certificate = not applicable (verdict is not orthogonal)\n";
  return 0;
}

int run_triangle(const std::string& t_path, const std::string& s_path, const CommonArgs& args,
                 double lambda_value) {
  const ComplexMatrix t = read_matrix_file(t_path);
  const ComplexMatrix s = read_matrix_file(s_path);
  const PositiveOperator a = load_positive(args.a_path, t.dim());
  if (t.dim() != a.dim() || s.dim() != a.dim())
    throw MatrixIoError("operators and A have different dimensions");
  const Lambda lambda(lambda_value);
  const OptimizerConfig cfg = make_config(args);

  const EqualityReport rep = triangle_equality(t, s, a, lambda, cfg);
  std::cout << "sum_seminorm = " << fmt12(rep.sum_seminorm) << "\n";
  std::cout << "seminorm_sum = " << fmt12(rep.seminorm_sum) << "\n";
  std::cout << "holds = " << (rep.holds ? "true" : "false") << "\n";
  std::cout << "witness_value = " << fmt_complex(rep.witness_value) << "\n";
  std::cout << "target = " << fmt12(rep.target) << "\n";
  std::cout << "witness = " << fmt_vector(rep.witness) << "\n";
  return 0;
}

int run_verify(const std::string& suite, int trials, std::uint64_t seed) {
  const PropertyReport report = run_suite(suite, trials, seed);
  std::cout << report_to_text(report);
  return report.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-Hilbertian operator seminorms and Birkhoff-James orthogonality"};
  app.require_subcommand(1);

  CommonArgs common;
  common.seed = default_seed();

  // compute
  auto* compute = app.add_subcommand("compute", "compute a single extremal quantity");
  std::string op_path, quantity = "seminorm";
  std::optional<double> lambda_opt;
  compute->add_option("--op", op_path, "operator matrix file (JSON)")->required();
  compute->add_option("--a", common.a_path, "positive operator A (default: identity)");
  compute->add_option("--lambda", lambda_opt, "mixing weight in [0,1]");
  compute->add_option("--quantity", quantity, "seminorm|wa|ca|minmod|m")
      ->check(CLI::IsMember({"seminorm", "wa", "ca", "minmod", "m"}));
  compute->add_option("--seed", common.seed, "optimizer seed");
  compute->add_option("--restarts", common.restarts, "optimizer restarts")->check(CLI::PositiveNumber);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "tabulate the seminorm over a lambda grid");
  int steps = 0;
  std::string out_path;
  sweep->add_option("--op", op_path, "operator matrix file (JSON)")->required();
  sweep->add_option("--a", common.a_path, "positive operator A (default: identity)");
  sweep->add_option("--steps", steps, "number of lambda grid points (>= 2)")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();
  sweep->add_option("--seed", common.seed, "optimizer seed");
  sweep->add_option("--restarts", common.restarts, "optimizer restarts")->check(CLI::PositiveNumber);

  // orth
  auto* orth = app.add_subcommand("orth", "decide (A,lambda)-Birkhoff-James orthogonality");
  std::string t_path, s_path;
  double lambda_value = 1.0, tolerance = 1e-5;
  orth->add_option("--t", t_path, "left operator T (JSON)")->required();
  orth->add_option("--s", s_path, "right operator S (JSON)")->required();
  orth->add_option("--a", common.a_path, "positive operator A (default: identity)");
  orth->add_option("--lambda", lambda_value, "mixing weight in [0,1]")->required();
  orth->add_option("--tol", tolerance, "relative-gap tolerance");
  orth->add_option("--seed", common.seed, "optimizer seed");
  orth->add_option("--restarts", common.restarts, "optimizer restarts")->check(CLI::PositiveNumber);

  // triangle
  auto* triangle = app.add_subcommand("triangle", "check the triangle-equality characterization");
  triangle->add_option("--t", t_path, "left operator T (JSON)")->required();
  triangle->add_option("--s", s_path, "right operator S (JSON)")->required();
  triangle->add_option("--a", common.a_path, "positive operator A (default: identity)");
  triangle->add_option("--lambda", lambda_value, "mixing weight in [0,1]")->required();
  triangle->add_option("--seed", common.seed, "optimizer seed");
  triangle->add_option("--restarts", common.restarts, "optimizer restarts")->check(CLI::PositiveNumber);

  // verify
  auto* verify = app.add_subcommand("verify", "run a randomized verification suite");
  std::string suite;
  int trials = 50;
  verify->add_option("--suite", suite, "suite name")->required();
  verify->add_option("--trials", trials, "trial count")->check(CLI::PositiveNumber);
  verify->add_option("--seed", common.seed, "suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (compute->parsed()) return run_compute(op_path, common, quantity, lambda_opt);
    if (sweep->parsed()) {
      if (steps < 2) {
        std::cerr << "error: --steps must be at least 2\n";
        return 2;
      }
      return run_sweep(op_path, common, steps, out_path);
    }
    if (orth->parsed()) return run_orth(t_path, s_path, common, lambda_value, tolerance);
    if (triangle->parsed()) return run_triangle(t_path, s_path, common, lambda_value);
    if (verify->parsed()) return run_verify(suite, trials, common.seed);
  } catch (const MatrixIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotHermitian& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NotPositive& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NotMember& e) {
    std::cerr << "error: the A-operator seminorm of this operator is infinite "
                 "(no A^{1/2}-adjoint exists): "
              << e.what() << "\n";
    return 4;
  } catch (const UnknownSuite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SemiopError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
