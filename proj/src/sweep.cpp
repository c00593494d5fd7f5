#include "cyclespec/sweep.hpp"

#include <algorithm>
#include <exception>
#include <utility>

#include "cyclespec/charpoly.hpp"
#include "cyclespec/eigenvectors.hpp"
#include "cyclespec/oracle.hpp"

namespace cyclespec {

namespace {

constexpr long kReferenceBits = 3322;

Real scaled_decimal(const char* text, const PrecisionContext& ctx) {
  return ldexp(ctx.parse(text), kReferenceBits - ctx.bits());
}

// Same decimal exponent per bit as at the reference precision. Used for the
// external-solver check, whose error does not shrink by whole ulps.
Real proportional_decimal(const char* text, const PrecisionContext& ctx) {
  return exp(log(ctx.parse(text)) * ctx.bits() / kReferenceBits);
}

void raise_to(Real& acc, const Real& value) {
  if (value > acc) acc = value;
}

void raise_to(std::optional<Real>& acc, const std::optional<Real>& value) {
  if (!value) return;
  if (!acc || *value > *acc) acc = *value;
}

Real max_abs_diff(const std::vector<EigenvalueRecord>& a, const std::vector<EigenvalueRecord>& b, long bits) {
  Real m(bits);
  for (std::size_t i = 0; i < a.size(); ++i) raise_to(m, abs(a[i].lambda - b[i].lambda));
  return m;
}

}  // namespace

std::vector<Rational> default_sweep_alphas() {
  std::vector<Rational> out;
  for (long den = 1; den <= 3; ++den) {
    for (long num = -3 * den; num < 0; ++num) {
      Rational q(num, den);
      q.canonicalize();
      if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SweepThresholds::SweepThresholds(const PrecisionContext& ctx)
    : residual(scaled_decimal("1e-996", ctx)),
      method_diff(scaled_decimal("1e-998", ctx)),
      oracle_diff(ctx.pow2(-ctx.bits() / 2)),
      reference_diff(proportional_decimal("1e-792", ctx)),
      trace(ctx.eps() * 100) {}

SweepSummary::SweepSummary(const PrecisionContext& ctx)
    : bits(ctx.bits()),
      max_residual(ctx.bits()),
      max_newton_vs_bisection(ctx.bits()),
      max_fixed_point_vs_newton(ctx.bits()),
      max_trace_error(ctx.bits()),
      thresholds(ctx) {}

SweepRow sweep_row(const SpectralProblem& problem, const SweepConfig& config, const PrecisionContext& ctx) {
  const long n = problem.n();
  SweepRow row(ctx.bits());
  row.alpha = problem.alpha_re();
  row.n = n;

  const auto newton = full_spectrum_serial(problem, ctx, Method::kNewton);
  const auto bisec = full_spectrum_serial(problem, ctx, Method::kBisection);
  const auto fixed = full_spectrum_serial(problem, ctx, Method::kFixedPoint);
  row.newton_vs_bisection = max_abs_diff(newton, bisec, ctx.bits());
  row.fixed_point_vs_newton = max_abs_diff(fixed, newton, ctx.bits());

  Real trace = ctx.real(Rational(2 * n - 2 + 2 * problem.alpha_re()));
  for (const auto& r : newton) {
    trace -= r.lambda;
    raise_to(row.max_residual, eigenvector(problem, r, ctx, true).residual);
  }
  row.trace_error = abs(trace);

  if (n <= config.oracle_max_n) {
    const auto oracle = oracle_spectrum(problem, ctx);
    Real m(ctx.bits());
    for (std::size_t i = 0; i < oracle.size(); ++i) raise_to(m, abs(oracle[i] - newton[i].lambda));
    row.oracle_diff = std::move(m);
  }
  for (const auto& ref : config.reference) {
    if (ref.alpha != problem.alpha_re() || ref.n != n || ref.j < 1 || ref.j > n) continue;
    const Real d = abs(ref.lambda.at(ctx.bits()) - newton[ref.j - 1].lambda);
    if (!row.reference_diff || d > *row.reference_diff) row.reference_diff = d;
  }
  return row;
}

SweepSummary run_sweep(const SweepConfig& config, const PrecisionContext& ctx) {
  std::vector<SpectralProblem> jobs;
  for (const auto& alpha : config.alphas) {
    const SpectralProblem base(alpha, 3);
    base.require_negative();
    const long lo = std::max(config.n_min > 0 ? config.n_min : base.n_alpha(), base.n_alpha());
    for (long n = lo; n <= config.n_max; ++n) jobs.push_back(base.with_n(n));
  }
  // Largest jobs first keeps the dynamic schedule balanced.
  std::vector<std::size_t> order(jobs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return jobs[a].n() > jobs[b].n(); });

  std::vector<std::optional<SweepRow>> slots(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    try {
      slots[i].emplace(sweep_row(jobs[i], config, ctx));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepSummary summary(ctx);
  for (auto& s : slots) {
    raise_to(summary.max_residual, s->max_residual);
    raise_to(summary.max_newton_vs_bisection, s->newton_vs_bisection);
    raise_to(summary.max_fixed_point_vs_newton, s->fixed_point_vs_newton);
    raise_to(summary.max_oracle_diff, s->oracle_diff);
    raise_to(summary.max_reference_diff, s->reference_diff);
    raise_to(summary.max_trace_error, s->trace_error);
    summary.rows.push_back(std::move(*s));
  }
  return summary;
}

}  // namespace cyclespec
