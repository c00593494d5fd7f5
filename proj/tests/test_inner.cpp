#include <random>

#include "doctest.h"
#include "helpers.hpp"

#include "cyclespec/inner.hpp"
#include "cyclespec/oracle.hpp"

using namespace cyclespec;
using testing::near;

namespace {

const PrecisionContext ctx(256);

Real tol10() { return ctx.eps() * 10; }

// Root of det(g(x) I - L) on (lo, hi) by plain bisection on the determinant
// recurrence; shares nothing with the secular-equation machinery. The left
// end is itself an eigenvalue (lambda_{j-1}), so the sign is taken on the right.
Real det_root(const SpectralProblem& p, Real lo, Real hi) {
  const PrecisionContext w = ctx.widened(64);
  const int s_hi = det_recurrence(p, g(hi.at(w.bits())), w).sign();
  for (int i = 0; i < 300; ++i) {
    Real m = ldexp(lo + hi, -1);
    (det_recurrence(p, g(m.at(w.bits())), w).sign() == s_hi ? hi : lo) = m;
  }
  return ldexp(lo + hi, -1);
}

}  // namespace

TEST_CASE("method names") {
  CHECK(parse_method("newton") == Method::kNewton);
  CHECK(parse_method("fixed-point") == Method::kFixedPoint);
  CHECK(parse_method("bisection") == Method::kBisection);
  CHECK(parse_method("auto") == Method::kAuto);
  CHECK_THROWS_AS(parse_method("secant"), ParseError);
  CHECK(to_string(Method::kFixedPoint) == "fixed-point");
  CHECK(to_string(Provenance::kExactOdd) == "exact-odd");
}

TEST_CASE("localization, n > kappa") {
  const auto b = localize(SpectralProblem(Rational(-1, 2), 8), ctx);
  REQUIRE(b.size() == 8);
  CHECK(near(b[0].lo, ctx.real(Rational(-1, 2)), ctx.eps()));
  CHECK(b[0].hi.is_zero());
  CHECK_FALSE(b[0].exact);
  CHECK(b[1].exact);
  CHECK(b[1].lo.is_zero());
  CHECK(b[2].exact);
  CHECK(near(b[2].lo, 2 - sqrt(ctx.real(2)), ctx.eps()));
  CHECK_FALSE(b[3].exact);
  CHECK(near(b[3].lo, b[2].lo, ctx.eps()));
}

TEST_CASE("localization, n = kappa and n < kappa") {
  const auto eq = localize(SpectralProblem(Rational(-1, 3), 4), ctx);
  CHECK(eq[0].exact);
  CHECK(eq[0].lo.is_zero());
  CHECK(eq[1].exact);
  CHECK(eq[1].lo.is_zero());
  const auto lt = localize(SpectralProblem(Rational(-1, 5), 5), ctx);
  CHECK(lt[0].exact);
  CHECK(lt[0].lo.is_zero());
  CHECK_FALSE(lt[1].exact);
  CHECK(lt[1].lo.is_zero());
  CHECK(near(lt[1].hi, g(ctx.pi() / 5), ctx.eps()));
  CHECK_THROWS_AS(localize(SpectralProblem(Rational(1, 5), 5), ctx), DomainError);
}

TEST_CASE("fixed point for alpha = -1/2, n = 8, j = 4") {
  const SpectralProblem p(Rational(-1, 2), 8);
  const EigenvalueRecord r = solve_inner_fixed_point(p, 4, ctx);
  const Real pi = ctx.pi();
  CHECK(r.root > pi * 2 / 8);
  CHECK(r.root < pi * 3 / 8);
  CHECK(near(r.root, pi * 3 / 8 + eta(r.root, ctx.real(3)) / 8, tol10()));
  CHECK(near(r.root, det_root(p, pi * 2 / 8, pi * 3 / 8), ctx.pow2(-200)));
  CHECK(r.method == Provenance::kFixedPoint);
  CHECK(r.root_kind == RootKind::kInner);
  CHECK(r.bracket_lo <= r.root);
  CHECK(r.root <= r.bracket_hi);
}

TEST_CASE("Newton agrees with fixed point and bisection") {
  const SpectralProblem p(Rational(-1, 2), 8);
  for (long j : {4L, 6L, 8L}) {
    const EigenvalueRecord nw = solve_inner_newton(p, j, ctx);
    const EigenvalueRecord fp = solve_inner_fixed_point(p, j, ctx);
    const EigenvalueRecord bi = solve_inner_bisection(p, j, ctx);
    CHECK(near(nw.root, fp.root, tol10()));
    CHECK(near(nw.lambda, fp.lambda, tol10()));
    CHECK(near(nw.lambda, bi.lambda, tol10()));
    CHECK(abs(inner_h(p, j, nw.root)) <= ctx.eps() * 8);
  }
}

TEST_CASE("Newton iterates decrease inside [z, d]") {
  for (const Rational& a : {Rational(-1, 3), Rational(-1), Rational(-5, 4)}) {
    const SpectralProblem p(a, 24);
    for (long j = 4; j <= 24; j += 2) {
      const EigenvalueRecord r = solve_inner_newton(p, j, ctx, SolveOptions{.keep_iterates = true});
      REQUIRE(r.iterates.size() >= 2);
      const Real d = grid_point(24, j, ctx);
      CHECK(near(r.iterates.front(), d, ctx.eps()));
      const Real slack = ctx.eps();
      for (std::size_t m = 1; m < r.iterates.size(); ++m) {
        CHECK(r.iterates[m] >= r.root - slack);
        CHECK(r.iterates[m] <= d + slack);
        if (abs(r.iterates[m - 1] - r.root) > slack) CHECK(r.iterates[m] < r.iterates[m - 1]);
      }
    }
  }
}

TEST_CASE("Newton error bounds against an independent root") {
  const SpectralProblem p(Rational(-1, 3), 40);  // N_alpha = 5, so n >= 2 N_alpha
  const double kappa = 4.0, n = 40.0;
  for (long j : {4L, 18L, 40L}) {
    const EigenvalueRecord r = solve_inner_newton(p, j, ctx, SolveOptions{.keep_iterates = true});
    const Real z = det_root(p, grid_point(40, j - 1, ctx), grid_point(40, j, ctx));
    for (std::size_t m = 1; m <= 5 && m < r.iterates.size(); ++m) {
      const double err = (r.iterates[m] - z).to_double();
      const double linear = M_PI / n * std::pow((kappa * kappa - 1) / (kappa * n - 1), static_cast<double>(m));
      const double quad = M_PI / n * std::pow(M_PI * kappa * kappa / (2 * n * n), std::pow(2.0, m) - 1);
      CHECK(err <= linear);
      CHECK(err <= std::max(quad, 1e-70));
    }
  }
}

TEST_CASE("fixed-point contraction factor stays below kappa / n") {
  const SpectralProblem p(Rational(-1, 2), 16);
  for (long j = 4; j <= 16; j += 2) {
    const EigenvalueRecord r = solve_inner_fixed_point(p, j, ctx, SolveOptions{.keep_iterates = true});
    for (std::size_t m = 2; m + 3 < r.iterates.size(); ++m) {
      const Real prev = abs(r.iterates[m - 1] - r.iterates[m - 2]);
      const Real cur = abs(r.iterates[m] - r.iterates[m - 1]);
      if (prev < ctx.pow2(-200)) break;
      CHECK(cur <= prev * 3 / 16);
    }
  }
}

TEST_CASE("bisection below kappa") {
  const SpectralProblem p(Rational(-1, 5), 5);
  const EigenvalueRecord r = solve_inner_bisection(p, 2, ctx);
  CHECK(r.lambda.sign() > 0);
  CHECK(r.lambda < g(ctx.pi() / 5));
  CHECK(near(r.root, det_root(p, ctx.pow2(-100), ctx.pi() / 5), ctx.pow2(-200)));
  CHECK_THROWS_AS(solve_inner_newton(p, 4, ctx), DomainError);
  CHECK_THROWS_AS(solve_inner_fixed_point(p, 4, ctx), DomainError);
  CHECK_NOTHROW(solve_inner_bisection(p, 4, ctx));
}

TEST_CASE("degenerate double zero refuses to bracket") {
  CHECK_THROWS_AS(solve_inner_bisection(SpectralProblem(Rational(-1, 3), 4), 2, ctx), BracketError);
  CHECK_THROWS_AS(solve_inner_bisection(SpectralProblem(Rational(-1, 3), 8), 2, ctx), BracketError);
}

TEST_CASE("index preconditions") {
  const SpectralProblem p(Rational(-1, 2), 8);
  CHECK_THROWS_AS(solve_inner_newton(p, 5, ctx), DomainError);
  CHECK_THROWS_AS(solve_inner_newton(p, 2, ctx), DomainError);
  CHECK_THROWS_AS(solve_inner_newton(p, 10, ctx), DomainError);
  CHECK_THROWS_AS(exact_odd_record(p, 4, ctx), DomainError);
  CHECK_THROWS_AS(exact_odd_record(p, 1, ctx), DomainError);
}

TEST_CASE("odd eigenvalues are exact and independent of alpha") {
  const EigenvalueRecord r = exact_odd_record(SpectralProblem(Rational(-1, 2), 8), 3, ctx);
  CHECK(near(r.lambda, 2 - sqrt(ctx.real(2)), ctx.eps()));
  CHECK(r.method == Provenance::kExactOdd);
  for (long n : {7L, 12L}) {
    for (long j = 3; j <= n; j += 2) {
      const Real a = exact_odd_record(SpectralProblem(Rational(-1, 3), n), j, ctx).lambda;
      CHECK(a == exact_odd_record(SpectralProblem(Rational(-1), n), j, ctx).lambda);
      CHECK(a == exact_odd_record(SpectralProblem(Rational(-5, 4), n), j, ctx).lambda);
      CHECK(a == g(grid_point(n, j, ctx)));
    }
  }
}

TEST_CASE("production solvers match their direct-evaluation references") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 12; ++t) {
    const Rational a = testing::random_rational(rng, -3, 0, 3);
    const SpectralProblem base(a, 3);
    const long n = base.n_alpha() + static_cast<long>(rng() % 20);
    const SpectralProblem p(a, n);
    for (long j = 4; j <= n; j += 2) {
      CHECK(near(solve_inner_bisection(p, j, ctx).lambda,
                 detail::solve_inner_bisection_reference(p, j, ctx).lambda, tol10()));
      CHECK(near(solve_inner_fixed_point(p, j, ctx).lambda,
                 detail::solve_inner_fixed_point_reference(p, j, ctx).lambda, tol10()));
    }
  }
}

TEST_CASE("first-order z approximation") {
  for (const Rational& a : {Rational(-1, 3), Rational(-5, 4)}) {
    const SpectralProblem base(a, 8);
    const Real kappa = ctx.real(base.kappa_exact());
    for (long n = 8; n <= 256; n *= 2) {
      const SpectralProblem p(a, n);
      const Real bound = ctx.pi() * kappa / (n * n);
      for (long j = 4; j <= n; j += 2) {
        const Real d = grid_point(n, j, ctx);
        const Real z = solve_inner_newton(p, j, ctx).root;
        CHECK(abs(z - d - eta(d, kappa) / n) <= bound);
      }
    }
  }
}

TEST_CASE("stopping helpers") {
  CHECK(detail::step_tolerance(ctx.real(Rational(1, 2)), 256) == ctx.pow2(-248));
  CHECK(detail::step_tolerance(ctx.real(4), 256) == ctx.pow2(-246));
  CHECK(detail::contraction_cap(0.5, 256) >= 256);
  CHECK(detail::contraction_cap(0.999, 256) > 256);
  CHECK_THROWS_AS(detail::contraction_cap(1.0, 256), DomainError);
}
