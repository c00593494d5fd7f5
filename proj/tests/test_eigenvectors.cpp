#include <random>

#include "doctest.h"
#include "helpers.hpp"

#include "cyclespec/charpoly.hpp"
#include "cyclespec/eigenvectors.hpp"

using namespace cyclespec;
using testing::near;
using testing::rel_diff;

namespace {

const PrecisionContext ctx(256);

Real residual_bound(long n) { return ctx.pow2(-256 + 24) * n; }

EigenvalueRecord record(const SpectralProblem& p, long j) {
  return solve_index(p.real_part(), j, ctx, Method::kAuto);
}

}  // namespace

TEST_CASE("j = 2 gives the constant vector") {
  const SpectralProblem p(Rational(-1, 2), 8);
  const EigenvectorRecord v = eigenvector(p, record(p, 2), ctx);
  REQUIRE(v.components.size() == 8);
  for (const auto& c : v.components) {
    CHECK(c.re == 1);
    CHECK(c.im.is_zero());
  }
  CHECK(v.residual.is_zero());
  CHECK(near(v.norm_exact, sqrt(ctx.real(8)), ctx.eps()));
}

TEST_CASE("second kernel vector at n = kappa") {
  for (long n : {3L, 4L, 7L, 10L}) {
    const SpectralProblem p(Rational(-1, n - 1), n);
    REQUIRE(p.compare_n_kappa() == 0);
    const EigenvectorRecord ones = eigenvector(p, record(p, 1), ctx);
    const EigenvectorRecord lin = eigenvector(p, record(p, 2), ctx);
    for (long k = 1; k <= n; ++k) CHECK(lin.components[k - 1].re == 2 * k - n - 1);
    CHECK(inner_product(ones.components, lin.components).re.is_zero());
    CHECK(lin.residual.is_zero());
    CHECK(near(lin.norm_exact, direct_norm(lin.components), ctx.eps()));
  }
  // For complex alpha the double zero has only the constant eigenvector.
  const SpectralProblem c(Rational(-1, 3), Rational(1), 4);
  CHECK_THROWS_AS(eigenvector(c, record(c, 2), ctx), DomainError);
}

TEST_CASE("complex alpha = -1/2 + i, n = 8, j = 4") {
  const SpectralProblem p(Rational(-1, 2), Rational(1), 8);
  const EigenvalueRecord r = record(p, 4);
  CHECK(r.lambda == solve_index(SpectralProblem(Rational(-1, 2), 8), 4, ctx, Method::kAuto).lambda);
  const EigenvectorRecord v = eigenvector(p, r, ctx);
  CHECK(v.residual <= residual_bound(8));
  bool has_imag = false;
  for (const auto& c : v.components) has_imag = has_imag || !c.im.is_zero();
  CHECK(has_imag);
  CHECK(rel_diff(v.norm_exact, direct_norm(v.components)) <= ctx.pow2(-128));
}

TEST_CASE("odd-j norm example") {
  const SpectralProblem p(Rational(-1, 2), 8);
  const EigenvectorRecord v = eigenvector(p, record(p, 3), ctx);
  const Real expected = ctx.real(Rational(3, 2)) * sqrt(4 * (2 - sqrt(ctx.real(2))));
  CHECK(near(v.norm_exact, expected, ctx.eps() * 10));
  CHECK(near(direct_norm(v.components), expected, ctx.eps() * 100));
  CHECK(expected.to_string(6) == "2.29610e+00");
}

TEST_CASE("residuals and norm formulas over a grid") {
  for (const Rational& re : {Rational(-1, 3), Rational(-1), Rational(-5, 4), Rational(-1, 9)}) {
    for (const Rational& im : {Rational(0), Rational(3, 2)}) {
      for (long n : {5L, 8L, 13L, 24L}) {
        const SpectralProblem p(re, im, n);
        for (long j = 1; j <= n; ++j) {
          if (j == 2 && p.compare_n_kappa() == 0 && !p.is_real()) continue;
          const EigenvectorRecord v = eigenvector(p, record(p, j), ctx);
          CHECK(v.residual <= residual_bound(n));
          CHECK(rel_diff(v.norm_exact, direct_norm(v.components)) <= ctx.pow2(-128));
          CHECK(v.norm_exact.sign() > 0);
        }
      }
    }
  }
}

TEST_CASE("normalization") {
  const SpectralProblem p(Rational(-2, 3), Rational(-1, 2), 12);
  for (long j : {1L, 4L, 7L}) {
    const EigenvectorRecord v = eigenvector(p, record(p, j), ctx, true);
    CHECK(v.normalized);
    CHECK(near(direct_norm(v.components), ctx.real(1), ctx.pow2(-128)));
  }
}

TEST_CASE("orthogonality for real alpha") {
  for (const Rational& a : {Rational(-1, 3), Rational(-5, 4), Rational(-1, 8)}) {
    const long n = 14;
    const SpectralProblem p(a, n);
    std::vector<EigenvectorRecord> vs;
    for (long j = 1; j <= n; ++j) vs.push_back(eigenvector(p, record(p, j), ctx));
    for (long i = 0; i < n; ++i) {
      for (long j = i + 1; j < n; ++j) {
        if (vs[i].lambda == vs[j].lambda) continue;
        const Real dot = inner_product(vs[i].components, vs[j].components).abs();
        CHECK(dot <= ctx.pow2(-128) * vs[i].norm_exact * vs[j].norm_exact);
      }
    }
  }
}

TEST_CASE("outlier vector in sinh form") {
  const SpectralProblem p(Rational(-1, 2), Rational(1, 3), 10);
  const EigenvalueRecord r = record(p, 1);
  const auto v = eigenvector_components(p, r, ctx);
  const Real s = r.root;
  const Real sh_half = sinh(ldexp(s, -1));
  const Real sh_nm1 = sinh(ldexp(s * 9, -1));
  for (long k = 1; k <= 10; ++k) {
    const Real ca = cosh(ldexp(s * (2 * k - 1), -1));
    const Real cb = cosh(ldexp(s * (11 - 2 * k), -1));
    // 2 sinh(s/2) cosh((2k-1)s/2) + 2 conj(alpha) sinh((n-1)s/2) cosh((n+1-2k)s/2)
    const Real re = 2 * sh_half * ca - sh_nm1 * cb;
    const Real im = -ctx.real(Rational(2, 3)) * sh_nm1 * cb;
    CHECK(rel_diff(v[k - 1].re, re) <= ctx.pow2(-200));
    CHECK(rel_diff(v[k - 1].im, im) <= ctx.pow2(-200));
  }
  const OutlierNormTerms u = outlier_norm_terms(p, s.at(512), g_minus(s.at(512)));
  CHECK(rel_diff(sqrt(u.u1 + u.u2 + u.u3), direct_norm(v)) <= ctx.pow2(-120));
}

TEST_CASE("hyperbolic identities") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 30; ++i) {
    const Real x = Real::from_double(u(rng), 256);
    const Real y = Real::from_double(u(rng), 256);
    const Real tol = ctx.pow2(-240);
    CHECK(near(sinh(x) + sinh(y), 2 * sinh(ldexp(x + y, -1)) * cosh(ldexp(x - y, -1)), tol));
    CHECK(near(sinh(x) - sinh(y), 2 * sinh(ldexp(x - y, -1)) * cosh(ldexp(x + y, -1)), tol));
    CHECK(near(2 * cosh(x) * cosh(y), cosh(x - y) + cosh(x + y), tol));
    CHECK(near(2 * sqr(cosh(x)), 1 + cosh(2 * x), tol));
    if (abs(x) < ctx.pow2(-4)) continue;
    const long n = 1 + static_cast<long>(rng() % 12);
    Real sum(ctx.bits());
    for (long k = 1; k <= n; ++k) sum += cosh(2 * k * x + y);
    CHECK(rel_diff(sum, sinh(x * n) * cosh(x * (n + 1) + y) / sinh(x)) <= ctx.pow2(-230));
  }
}

TEST_CASE("asymptotic norms") {
  const Rational a(-1, 3);
  // Even j: sqrt(n) |exact - asymptotic| stays bounded.
  std::vector<double> even;
  for (long n = 16; n <= 256; n *= 2) {
    const SpectralProblem p(a, n);
    double worst = 0;
    for (long j = 4; j <= n; j += 2) {
      const Real d = abs(norm_exact(p, j, ctx) - norm_asympt(p, j, ctx));
      worst = std::max(worst, d.to_double());
    }
    even.push_back(worst * std::sqrt(static_cast<double>(n)));
  }
  for (std::size_t i = 1; i < even.size(); ++i) CHECK(even[i] < even[0] * 2);
  // j = 1: |exact - mu e^{n omega}| / n stays bounded while the norm grows exponentially.
  std::vector<double> outl;
  for (long n = 16; n <= 128; n *= 2) {
    const SpectralProblem p(a, n);
    outl.push_back((abs(norm_exact(p, 1, ctx) - norm_asympt(p, 1, ctx)) / n).to_double());
  }
  for (std::size_t i = 1; i < outl.size(); ++i) CHECK(outl[i] < outl[0] * 4);
  const SpectralProblem p(Rational(-1, 2), 8);
  CHECK(near(norm_asympt(p, 1, ctx), constants(p, ctx).mu * 256, ctx.eps() * 256));
  CHECK(norm_asympt(p, 2, ctx) == sqrt(ctx.real(8)));
  CHECK(near(norm_asympt(p, 3, ctx), norm_exact(p, 3, ctx), ctx.eps() * 10));
  CHECK_THROWS_AS(norm_asympt(p, 9, ctx), DomainError);
}

TEST_CASE("profiles interpolate the components") {
  const SpectralProblem p(Rational(-1, 3), Rational(1, 2), 12);
  for (long j : {1L, 2L, 5L, 8L}) {
    const EigenvalueRecord r = record(p, j);
    const auto v = eigenvector_components(p, r, ctx);
    const Real tol = ctx.pow2(-200) * direct_norm(v);
    for (long k = 1; k <= 12; ++k) {
      const Complex w = profile_at(p, r, ctx.real(k));
      CHECK(near(w.re, v[k - 1].re, tol));
      CHECK(near(w.im, v[k - 1].im, tol));
    }
    const auto samples = profile(p, r, 25, ctx);
    REQUIRE(samples.size() == 25);
    CHECK(samples.front().first.is_zero());
    CHECK(samples.back().first == 12);
  }
  CHECK_THROWS_AS(profile(p, record(p, 3), 1, ctx), DomainError);
}

TEST_CASE("profile sign changes and endpoint dominance") {
  const SpectralProblem p(Rational(-1, 3), 32);
  for (long j = 3; j <= 32; ++j) {
    const auto w = profile(p, record(p, j), 2001, ctx);
    long changes = 0;
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i - 1].second.re.sign() * w[i].second.re.sign() < 0) ++changes;
    }
    CHECK(changes >= j - 2);
    CHECK(changes <= j);
  }
  const SpectralProblem q(Rational(-1, 2), 16);
  const auto v = eigenvector_components(q, record(q, 1), ctx);
  // Magnitudes grow geometrically toward both ends.
  for (long k = 2; k <= 8; ++k) CHECK(v[k - 1].abs() < v[k - 2].abs());
  for (long k = 10; k <= 16; ++k) CHECK(v[k - 1].abs() > v[k - 2].abs());
  CHECK(v.front().abs() > v[7].abs() * 100);
}

TEST_CASE("outlier vectors need n >= N_alpha") {
  const SpectralProblem p(Rational(-1, 2), 3);
  EigenvalueRecord fake(ctx.bits());
  fake.j = 1;
  fake.root_kind = RootKind::kOutlier;
  fake.root = ctx.parse("0.5");
  CHECK_THROWS_AS(eigenvector(p, fake, ctx), DomainError);
}
