#include "cyclespec/outlier.hpp"

#include <string>

#include "sign_eval.hpp"

namespace cyclespec {

namespace {

constexpr long kGuardBits = 32;

void require_outlier(const SpectralProblem& problem) {
  problem.require_negative();
  if (problem.compare_n_kappa() <= 0) {
    throw DomainError("no negative eigenvalue for n <= kappa (n=" + std::to_string(problem.n()) + ", kappa=" +
                      to_string(problem.kappa_exact()) + ")");
  }
}

Real omega_at(const SpectralProblem& problem, const PrecisionContext& ctx) {
  return log(ctx.real(Rational(1 - 2 * problem.alpha_re())));
}

OutlierSolution finish(const SpectralProblem& problem, const Real& s, Provenance how, long iterations,
                       std::vector<Real> trail, const PrecisionContext& ctx) {
  OutlierSolution out(ctx.bits());
  out.s = s.at(ctx.bits());
  out.lambda1 = g_minus(s).at(ctx.bits());
  out.ell = ell(problem, ctx);
  out.method = how;
  out.iterations = iterations;
  out.iterates = std::move(trail);
  return out;
}

long outlier_cap(const SpectralProblem& problem, long bits) {
  // phi' decreases on (0, inf) and the iteration stays in [phi(ell), omega].
  const PrecisionContext low(64);
  const Real kappa = low.real(problem.kappa_exact());
  const Real left = phi(ell(problem, low), problem.n(), kappa);
  return detail::contraction_cap(phi_d1(left, problem.n(), kappa).to_double(), bits);
}

}  // namespace

Real outlier_f(const SpectralProblem& problem, const Real& x) {
  const Real kappa(problem.kappa_exact(), x.bits());
  return x - phi(x, problem.n(), kappa);
}

Real outlier_f_d1(const SpectralProblem& problem, const Real& x) {
  const Real kappa(problem.kappa_exact(), x.bits());
  return 1 - phi_d1(x, problem.n(), kappa);
}

OutlierSolution solve_outlier_newton(const SpectralProblem& problem, const PrecisionContext& ctx,
                                     const SolveOptions& opts) {
  require_outlier(problem);
  const PrecisionContext w = ctx.widened(kGuardBits);
  const long n = problem.n();
  const Real kappa = w.real(problem.kappa_exact());
  const Real lo = ell(problem, w);
  const Real slack = ldexp(Real(1L, w.bits()), -w.bits() + 16);

  Real y = omega_at(problem, w);
  std::vector<Real> trail;
  if (opts.keep_iterates) trail.push_back(y.at(ctx.bits()));
  const long cap = w.bits();
  for (long m = 1; m <= cap; ++m) {
    const Real f = y - phi(y, n, kappa);
    const Real step = f / (1 - phi_d1(y, n, kappa));
    y -= step;
    if (step < -slack || y < lo - slack) {
      throw BracketViolation("outlier Newton iterate left [s, omega] (n=" + std::to_string(n) + ")");
    }
    if (opts.keep_iterates) trail.push_back(y.at(ctx.bits()));
    if (abs(step) <= detail::step_tolerance(y, w.bits())) {
      return finish(problem, y, Provenance::kNewton, m, std::move(trail), ctx);
    }
  }
  throw ConvergenceError("outlier Newton did not converge within " + std::to_string(cap) + " iterations");
}

OutlierSolution solve_outlier_fixed_point(const SpectralProblem& problem, const PrecisionContext& ctx,
                                          const SolveOptions& opts) {
  require_outlier(problem);
  const PrecisionContext w = ctx.widened(kGuardBits);
  const long cap = outlier_cap(problem, w.bits());

  detail::PhiTracker tracker(problem, w);
  Real x = omega_at(problem, w);
  tracker.reset(x);
  std::vector<Real> trail;
  if (opts.keep_iterates) trail.push_back(x.at(ctx.bits()));
  for (long m = 1; m <= cap; ++m) {
    Real next = tracker.value();
    const Real step = next - x;
    tracker.advance(next, step);
    x = std::move(next);
    if (opts.keep_iterates) trail.push_back(x.at(ctx.bits()));
    if (abs(step) <= detail::step_tolerance(x, w.bits())) {
      const Real kappa = w.real(problem.kappa_exact());
      for (int k = 0; k < 2; ++k) {
        x = phi(x, problem.n(), kappa);
        ++m;
        if (opts.keep_iterates) trail.push_back(x.at(ctx.bits()));
      }
      return finish(problem, x, Provenance::kFixedPoint, m, std::move(trail), ctx);
    }
  }
  throw ConvergenceError("outlier fixed-point iteration exceeded " + std::to_string(cap) + " iterations");
}

OutlierSolution solve_outlier_bisection(const SpectralProblem& problem, const PrecisionContext& ctx,
                                        const SolveOptions& opts) {
  require_outlier(problem);
  const PrecisionContext w = ctx.widened(kGuardBits);
  Real lo = ell(problem, w);
  Real hi = omega_at(problem, w);

  // sign f = sign(kappa tanh(x/2) - tanh(n x/2))
  // f(omega) is as small as e^{-n omega}: the endpoints are not rounded.
  detail::OutlierSign sign(problem, w.bits());
  const int s_lo = sign.at(lo, w.bits());
  const int s_hi = sign.at(hi, w.bits());
  if (!(s_lo < 0 && s_hi > 0)) {
    throw BracketError("f(ell) < 0 < f(omega) violated (n=" + std::to_string(problem.n()) + ")");
  }
  std::vector<Real> trail;
  long it = 0;
  const long cap = w.bits() + 64;
  const Real stop = ldexp(Real(1L, w.bits()), -w.bits() + 2);
  while (hi - lo > stop) {
    if (++it > cap) throw ConvergenceError("outlier bisection exceeded iteration cap");
    const long depth = -(hi - lo).exponent();
    Real mid = ldexp(lo + hi, -1);
    const int s = sign.at(mid, depth);
    if (opts.keep_iterates) trail.push_back(mid.at(ctx.bits()));
    if (s == 0) {
      lo = mid;
      hi = mid;
      break;
    }
    (s < 0 ? lo : hi) = std::move(mid);
  }
  return finish(problem, ldexp(lo + hi, -1), Provenance::kBisection, it, std::move(trail), ctx);
}

OutlierSolution solve_outlier(const SpectralProblem& problem, const PrecisionContext& ctx, Method method,
                              const SolveOptions& opts) {
  switch (method) {
    case Method::kFixedPoint: return solve_outlier_fixed_point(problem, ctx, opts);
    case Method::kBisection: return solve_outlier_bisection(problem, ctx, opts);
    case Method::kNewton: return solve_outlier_newton(problem, ctx, opts);
    case Method::kAuto: break;
  }
  try {
    return solve_outlier_newton(problem, ctx, opts);
  } catch (const BracketViolation&) {
    return solve_outlier_fixed_point(problem, ctx, opts);
  }
}

Real outlier_gap(const SpectralProblem& problem, const PrecisionContext& ctx) {
  problem.require_negative();
  if (problem.compare_n_kappa() == 0) return Real(ctx.bits());
  return abs(solve_outlier_newton(problem, ctx).lambda1);
}

EigenvalueRecord outlier_record(const SpectralProblem& problem, const OutlierSolution& sol,
                                const PrecisionContext& ctx) {
  EigenvalueRecord r(ctx.bits());
  r.j = 1;
  r.lambda = sol.lambda1;
  r.root = sol.s;
  r.root_kind = RootKind::kOutlier;
  r.method = sol.method;
  r.bracket_lo = sol.ell;
  r.bracket_hi = omega_at(problem, ctx);
  r.iterations = sol.iterations;
  r.iterates = sol.iterates;
  return r;
}

namespace detail {

OutlierSolution solve_outlier_fixed_point_reference(const SpectralProblem& problem, const PrecisionContext& ctx) {
  require_outlier(problem);
  const PrecisionContext w = ctx.widened(kGuardBits);
  const Real kappa = w.real(problem.kappa_exact());
  const long cap = outlier_cap(problem, w.bits());
  Real x = omega_at(problem, w);
  for (long m = 1; m <= cap; ++m) {
    Real next = phi(x, problem.n(), kappa);
    const Real step = next - x;
    x = std::move(next);
    if (abs(step) <= step_tolerance(x, w.bits())) return finish(problem, x, Provenance::kFixedPoint, m, {}, ctx);
  }
  throw ConvergenceError("outlier fixed-point iteration exceeded cap");
}

}  // namespace detail

}  // namespace cyclespec
