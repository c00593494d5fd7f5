#include "cyclespec/inner.hpp"

#include <cmath>
#include <string>

#include "sign_eval.hpp"

namespace cyclespec {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kAuto: return "auto";
    case Method::kNewton: return "newton";
    case Method::kFixedPoint: return "fixed-point";
    case Method::kBisection: return "bisection";
  }
  return "auto";
}

Method parse_method(std::string_view text) {
  if (text == "auto") return Method::kAuto;
  if (text == "newton") return Method::kNewton;
  if (text == "fixed-point" || text == "fixed_point" || text == "fp") return Method::kFixedPoint;
  if (text == "bisection" || text == "bisec") return Method::kBisection;
  throw ParseError("unknown method '" + std::string(text) + "'");
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kExactOdd: return "exact-odd";
    case Provenance::kNewton: return "newton";
    case Provenance::kFixedPoint: return "fixed-point";
    case Provenance::kBisection: return "bisection";
    case Provenance::kZero: return "zero";
  }
  return "zero";
}

namespace detail {

Real step_tolerance(const Real& x, long bits) {
  const Real ax = abs(x);
  Real scale = ax > 1 ? ax : Real(1L, x.bits());
  return ldexp(scale, -bits + 8);
}

long contraction_cap(double lipschitz, long bits) {
  if (!(lipschitz > 0.0)) return bits;
  if (lipschitz >= 1.0) throw DomainError("map is not a contraction (Lipschitz bound >= 1)");
  const double per_step = -std::log2(lipschitz);
  const long needed = static_cast<long>(std::ceil(static_cast<double>(bits) / per_step)) + 64;
  return needed > bits ? needed : bits;
}

}  // namespace detail

namespace {

constexpr long kGuardBits = 32;

void check_even_inner(const SpectralProblem& problem, long j, long min_j) {
  if (j % 2 != 0 || j < min_j || j > problem.n()) {
    throw DomainError("even index " + std::to_string(min_j) + " <= j <= n required, got j=" + std::to_string(j));
  }
}

void check_iterative(const SpectralProblem& problem, long j) {
  problem.require_negative();
  check_even_inner(problem, j, 4);
  if (problem.n() < problem.n_alpha()) {
    throw DomainError("n=" + std::to_string(problem.n()) + " is below N_alpha=" + std::to_string(problem.n_alpha()) +
                      "; only bisection is guaranteed there");
  }
}

EigenvalueRecord inner_record(long j, const Real& root, const Real& lo, const Real& hi, Provenance how,
                              long iterations, long bits) {
  EigenvalueRecord r(bits);
  r.j = j;
  r.root = root.at(bits);
  r.lambda = g(root).at(bits);
  r.root_kind = RootKind::kInner;
  r.method = how;
  r.bracket_lo = lo.at(bits);
  r.bracket_hi = hi.at(bits);
  r.iterations = iterations;
  return r;
}

}  // namespace

EigenvalueRecord exact_odd_record(const SpectralProblem& problem, long j, const PrecisionContext& ctx) {
  if (j % 2 == 0 || j < 3 || j > problem.n()) throw DomainError("odd index 3 <= j <= n required");
  const Real d = grid_point(problem.n(), j, ctx);
  EigenvalueRecord r(ctx.bits());
  r.j = j;
  r.root = d;
  r.lambda = g(d);
  r.root_kind = RootKind::kInner;
  r.method = Provenance::kExactOdd;
  r.bracket_lo = d;
  r.bracket_hi = d;
  return r;
}

EigenvalueRecord zero_record(long j, const PrecisionContext& ctx) {
  EigenvalueRecord r(ctx.bits());
  r.j = j;
  r.method = Provenance::kZero;
  r.root_kind = RootKind::kNone;
  return r;
}

std::vector<LambdaBracket> localize(const SpectralProblem& problem, const PrecisionContext& ctx) {
  problem.require_negative();
  const long n = problem.n();
  const int side = problem.compare_n_kappa();
  const Real zero(ctx.bits());
  std::vector<LambdaBracket> out;
  out.reserve(static_cast<std::size_t>(n));

  if (side > 0) {
    out.push_back({1, ctx.real(Rational(4 * problem.alpha_re() * problem.alpha_re() / (2 * problem.alpha_re() - 1))),
                   zero, false});
    out.push_back({2, zero, zero, true});
  } else if (side < 0) {
    out.push_back({1, zero, zero, true});
    out.push_back({2, zero, g(grid_point(n, 2, ctx)), false});
  } else {
    out.push_back({1, zero, zero, true});
    out.push_back({2, zero, zero, true});
  }
  for (long j = 3; j <= n; ++j) {
    const Real hi = g(grid_point(n, j, ctx));
    if (j % 2 == 1) {
      out.push_back({j, hi, hi, true});
    } else {
      out.push_back({j, g(grid_point(n, j - 1, ctx)), hi, false});
    }
  }
  return out;
}

Real inner_h(const SpectralProblem& problem, long j, const Real& x) {
  const long bits = x.bits();
  const Real kappa(problem.kappa_exact(), bits);
  Real pi(bits);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  return x * problem.n() - pi * (j - 1) - eta(x, kappa);
}

Real inner_h_d1(const SpectralProblem& problem, long, const Real& x) {
  const Real kappa(problem.kappa_exact(), x.bits());
  return problem.n() - eta_d1(x, kappa);
}

// ---------------------------------------------------------------------------
// Newton

EigenvalueRecord solve_inner_newton(const SpectralProblem& problem, long j, const PrecisionContext& ctx,
                                    const SolveOptions& opts) {
  check_iterative(problem, j);
  const PrecisionContext w = ctx.widened(kGuardBits);
  const long n = problem.n();
  const Real kappa = w.real(problem.kappa_exact());
  const Real lo = grid_point(n, j - 1, w);
  const Real hi = grid_point(n, j, w);
  const Real pi = w.pi();
  // Iterates may overshoot the root by rounding noise only.
  const Real slack = ldexp(Real(1L, w.bits()), -w.bits() + 16);

  Real y = hi;
  std::vector<Real> trail;
  if (opts.keep_iterates) trail.push_back(y.at(ctx.bits()));
  const long cap = w.bits();
  for (long m = 1; m <= cap; ++m) {
    const Real hv = y * n - pi * (j - 1) - eta(y, kappa);
    const Real step = hv / (n - eta_d1(y, kappa));
    y -= step;
    if (y < lo - slack || y > hi + slack) {
      throw BracketViolation("Newton iterate left I_{n,j} for j=" + std::to_string(j) +
                             " (n=" + std::to_string(n) + ")");
    }
    if (opts.keep_iterates) trail.push_back(y.at(ctx.bits()));
    if (abs(step) <= detail::step_tolerance(y, w.bits())) {
      EigenvalueRecord r = inner_record(j, y, lo, hi, Provenance::kNewton, m, ctx.bits());
      r.iterates = std::move(trail);
      return r;
    }
  }
  throw ConvergenceError("Newton did not converge within " + std::to_string(cap) + " iterations");
}

// ---------------------------------------------------------------------------
// Fixed point

namespace {

long inner_fixed_point_cap(const SpectralProblem& problem, long j, long bits) {
  // eta' is decreasing on [0, pi], so the map's Lipschitz constant on
  // cl(I_{n,j}) is eta'(d_{n,j-1}) / n.
  const PrecisionContext low(64);
  const Real kappa = low.real(problem.kappa_exact());
  const double lip = eta_d1(grid_point(problem.n(), j - 1, low), kappa).to_double() / problem.n();
  return detail::contraction_cap(lip, bits);
}

}  // namespace

EigenvalueRecord solve_inner_fixed_point(const SpectralProblem& problem, long j, const PrecisionContext& ctx,
                                         const SolveOptions& opts) {
  check_iterative(problem, j);
  const PrecisionContext w = ctx.widened(kGuardBits);
  const long n = problem.n();
  const Real lo = grid_point(n, j - 1, w);
  const Real hi = grid_point(n, j, w);
  const long cap = inner_fixed_point_cap(problem, j, w.bits());

  detail::EtaTracker tracker(problem, w);
  std::vector<Real> trail;
  Real x = hi;
  tracker.reset(x);
  if (opts.keep_iterates) trail.push_back(x.at(ctx.bits()));
  for (long m = 1; m <= cap; ++m) {
    Real next = hi + tracker.value() / n;
    Real step = next - x;
    tracker.advance(next, step);
    x = std::move(next);
    if (opts.keep_iterates) trail.push_back(x.at(ctx.bits()));
    if (abs(step) <= detail::step_tolerance(x, w.bits())) {
      // Incremental updates accumulate rounding; finish with direct steps.
      const Real kappa = w.real(problem.kappa_exact());
      for (int k = 0; k < 2; ++k) {
        x = hi + eta(x, kappa) / n;
        ++m;
        if (opts.keep_iterates) trail.push_back(x.at(ctx.bits()));
      }
      EigenvalueRecord r = inner_record(j, x, lo, hi, Provenance::kFixedPoint, m, ctx.bits());
      r.iterates = std::move(trail);
      return r;
    }
  }
  throw ConvergenceError("fixed-point iteration exceeded " + std::to_string(cap) + " iterations");
}

// ---------------------------------------------------------------------------
// Bisection

EigenvalueRecord solve_inner_bisection(const SpectralProblem& problem, long j, const PrecisionContext& ctx,
                                       const SolveOptions& opts) {
  problem.require_negative();
  check_even_inner(problem, j, 2);
  if (j == 2 && problem.compare_n_kappa() >= 0) {
    throw BracketError("no sign change for j=2 when n >= kappa (lambda_2 = 0)");
  }
  const PrecisionContext w = ctx.widened(kGuardBits);
  const long n = problem.n();

  // In t = 2 cos(x/2) the interval I_{n,j} maps to (t_hi_x, t_lo_x).
  Real t_lo = 2 * cos(ldexp(grid_point(n, j, w), -1));
  Real t_hi = 2 * cos(ldexp(grid_point(n, j - 1, w), -1));
  if (j == 2) t_hi = w.real(2);

  detail::SecularSign sign(problem, w.bits());
  const int s_lo = sign.at(t_lo, 0);
  const int s_hi = sign.at(t_hi, 0);
  if (s_lo == 0 || s_hi == 0 || s_lo == s_hi) {
    throw BracketError("no sign change of the secular equation on I_{n,j} for j=" + std::to_string(j));
  }

  std::vector<Real> trail;
  long iterations = 0;
  const long cap = w.bits() + 64;
  while (iterations < cap) {
    const Real width = t_hi - t_lo;
    if (width <= ldexp(Real(1L, w.bits()), -w.bits() + 1)) break;
    const long depth = -width.exponent();
    Real mid = ldexp(t_lo + t_hi, -1);
    const int s = sign.at(mid, depth);
    ++iterations;
    if (opts.keep_iterates) trail.push_back((2 * acos(ldexp(mid, -1))).at(ctx.bits()));
    if (s == 0) {
      t_lo = mid;
      t_hi = mid;
      break;
    }
    if (s == s_lo) {
      t_lo = std::move(mid);
    } else {
      t_hi = std::move(mid);
    }
  }
  if (iterations >= cap) throw ConvergenceError("bisection exceeded iteration cap");

  const Real t = ldexp(t_lo + t_hi, -1);
  EigenvalueRecord r(ctx.bits());
  r.j = j;
  r.root = (2 * acos(ldexp(t, -1))).at(ctx.bits());
  r.lambda = (4 - sqr(t)).at(ctx.bits());
  r.root_kind = RootKind::kInner;
  r.method = Provenance::kBisection;
  r.bracket_lo = (2 * acos(ldexp(t_hi, -1))).at(ctx.bits());
  r.bracket_hi = (2 * acos(ldexp(t_lo, -1))).at(ctx.bits());
  r.iterations = iterations;
  r.iterates = std::move(trail);
  return r;
}

// ---------------------------------------------------------------------------
// Reference implementations

namespace detail {

namespace {

// (1-a) cos(n x/2) + a cos(x/2) sin(n x/2) / sin(x/2): the secular function
// q(2 cos(x/2)) written in x.
Real secular_trig(const SpectralProblem& problem, const Real& x) {
  const long bits = x.bits();
  const Real a(problem.alpha_re(), bits);
  Real s1(bits), c1(bits), sn(bits), cn(bits);
  sin_cos(ldexp(x, -1), s1, c1);
  sin_cos(ldexp(x * problem.n(), -1), sn, cn);
  return (1 - a) * cn + a * c1 * sn / s1;
}

}  // namespace

EigenvalueRecord solve_inner_bisection_reference(const SpectralProblem& problem, long j,
                                                 const PrecisionContext& ctx) {
  problem.require_negative();
  check_even_inner(problem, j, 2);
  if (j == 2 && problem.compare_n_kappa() >= 0) throw BracketError("degenerate j=2");
  const PrecisionContext w = ctx.widened(kGuardBits);
  const long n = problem.n();
  Real lo = grid_point(n, j - 1, w);
  Real hi = grid_point(n, j, w);
  // x = 0 is a removable point of the trig form; its limit is q(2) = (1-a) + a n.
  const int s_lo = j == 2 ? sgn(Rational(1 - problem.alpha_re() + problem.alpha_re() * n))
                          : secular_trig(problem, lo).sign();
  const int s_hi = secular_trig(problem, hi).sign();
  if (s_lo == 0 || s_hi == 0 || s_lo == s_hi) throw BracketError("no sign change on I_{n,j}");
  long it = 0;
  while (hi - lo > ldexp(Real(1L, w.bits()), -w.bits() + 2)) {
    Real mid = ldexp(lo + hi, -1);
    const int s = secular_trig(problem, mid).sign();
    ++it;
    if (s == 0) {
      lo = mid;
      hi = mid;
      break;
    }
    (s == s_lo ? lo : hi) = std::move(mid);
  }
  const Real x = ldexp(lo + hi, -1);
  return inner_record(j, x, lo, hi, Provenance::kBisection, it, ctx.bits());
}

EigenvalueRecord solve_inner_fixed_point_reference(const SpectralProblem& problem, long j,
                                                   const PrecisionContext& ctx) {
  check_iterative(problem, j);
  const PrecisionContext w = ctx.widened(kGuardBits);
  const long n = problem.n();
  const Real kappa = w.real(problem.kappa_exact());
  const Real lo = grid_point(n, j - 1, w);
  const Real hi = grid_point(n, j, w);
  const long cap = inner_fixed_point_cap(problem, j, w.bits());
  Real x = hi;
  for (long m = 1; m <= cap; ++m) {
    Real next = hi + eta(x, kappa) / n;
    const Real step = next - x;
    x = std::move(next);
    if (abs(step) <= step_tolerance(x, w.bits())) {
      return inner_record(j, x, lo, hi, Provenance::kFixedPoint, m, ctx.bits());
    }
  }
  throw ConvergenceError("fixed-point iteration exceeded cap");
}

}  // namespace detail

}  // namespace cyclespec
