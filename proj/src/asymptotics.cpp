#include "cyclespec/asymptotics.hpp"

#include <exception>
#include <optional>
#include <string>

namespace cyclespec {

namespace {

void require_even(const SpectralProblem& problem, long j) {
  if (j % 2 != 0 || j < 2 || j > problem.n()) throw DomainError("even 2 <= j <= n required");
}

void require_outlier_range(const SpectralProblem& problem) {
  problem.require_negative();
  if (problem.n() < problem.n_alpha()) {
    throw DomainError("n=" + std::to_string(problem.n()) + " is below N_alpha=" + std::to_string(problem.n_alpha()));
  }
}

Rational rational_pow(const Rational& q, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

Real lambda_asympt_inner(const SpectralProblem& problem, long j, const PrecisionContext& ctx) {
  problem.require_negative();
  require_even(problem, j);
  const long n = problem.n();
  const Real kappa = ctx.real(problem.kappa_exact());
  const Real d = grid_point(n, j, ctx);
  const Real e = eta(d, kappa);
  const Real e1 = eta_d1(d, kappa);
  const Real g1 = g_d1(d);
  return g(d) + g1 * e / n + (g1 * e * e1 + ldexp(g_d2(d) * sqr(e), -1)) / (n * n);
}

Real z_asympt(const SpectralProblem& problem, long j, int order, const PrecisionContext& ctx) {
  problem.require_negative();
  require_even(problem, j);
  const long n = problem.n();
  const Real kappa = ctx.real(problem.kappa_exact());
  const Real d = grid_point(n, j, ctx);
  const Real e = eta(d, kappa);
  Real z = d + e / n;
  if (order >= 2) z += e * eta_d1(d, kappa) / (n * n);
  return z;
}

Real exp_minus_n_omega(const SpectralProblem& problem, const PrecisionContext& ctx) {
  problem.require_negative();
  const Rational base = 1 - 2 * problem.alpha_re();
  return ctx.real(Rational(1 / rational_pow(base, static_cast<unsigned long>(problem.n()))));
}

Real s_asympt(const SpectralProblem& problem, const PrecisionContext& ctx) {
  require_outlier_range(problem);
  const ModelConstants c = constants(problem, ctx);
  const Real e = exp_minus_n_omega(problem, ctx);
  const Real e2 = sqr(e);
  return c.omega - c.gamma1 * e - sqr(c.gamma1) * problem.n() * e2 + c.gamma2 * e2;
}

Real lambda_asympt_outlier(const SpectralProblem& problem, const PrecisionContext& ctx) {
  require_outlier_range(problem);
  const ModelConstants c = constants(problem, ctx);
  const Real e = exp_minus_n_omega(problem, ctx);
  const Real e2 = sqr(e);
  return c.Omega + c.beta1 * e + c.beta2 * problem.n() * e2 - c.beta3 * e2;
}

AsymptoticReport asymptotic_report(const SpectralProblem& problem, const PrecisionContext& ctx,
                                   const ReportOptions& opts) {
  require_outlier_range(problem);
  const long n = problem.n();
  AsymptoticReport report(ctx.bits());
  report.alpha = problem.alpha_re();
  report.n = n;

  if (opts.inner) {
    // Index i covers j = 2i + 2; lambda_2 = 0 exactly since n > kappa.
    const long count = n / 2;
    std::vector<std::optional<AsymptoticEntry>> slots(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
      const long j = 2 * i + 2;
      try {
        Real exact = j == 2 ? Real(ctx.bits()) : solve_inner_newton(problem, j, ctx).lambda;
        Real approx = lambda_asympt_inner(problem, j, ctx);
        Real err = approx - exact;
        slots[i].emplace(AsymptoticEntry{j, std::move(exact), std::move(approx), std::move(err)});
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (auto& s : slots) {
      const Real a = abs(s->error);
      if (s->j >= 4 && a > report.max_abs_error) report.max_abs_error = a;
      if (a > report.max_abs_error_with_j2) report.max_abs_error_with_j2 = a;
      if (opts.keep_entries) report.entries.push_back(std::move(*s));
    }
    report.scaled_inner = report.max_abs_error * n * n * n;
  }

  if (opts.outlier) {
    const Real exact = solve_outlier_newton(problem, ctx).lambda1;
    Real r1 = lambda_asympt_outlier(problem, ctx) - exact;
    const Real e = exp_minus_n_omega(problem, ctx);
    report.scaled_outlier = abs(r1) / (e * e * e) / (n * n);
    report.outlier_error = std::move(r1);
  }
  return report;
}

std::vector<AsymptoticReport> error_table(const Rational& alpha, const std::vector<long>& n_list,
                                          const PrecisionContext& ctx, const ReportOptions& opts) {
  std::vector<AsymptoticReport> out;
  out.reserve(n_list.size());
  for (long n : n_list) out.push_back(asymptotic_report(SpectralProblem(alpha, n), ctx, opts));
  return out;
}

std::string display(const Real& x, int digits) { return x.to_string(digits); }

}  // namespace cyclespec
