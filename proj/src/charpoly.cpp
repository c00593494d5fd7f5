#include "cyclespec/charpoly.hpp"

#include <string>

namespace cyclespec {

LaplacianMatrix::LaplacianMatrix(const SpectralProblem& problem, const PrecisionContext& ctx)
    : n_(problem.n()), bits_(ctx.bits()), alpha_(problem.alpha(ctx)) {}

Complex LaplacianMatrix::entry(long i, long j) const {
  Complex z(bits_);
  const long last = n_ - 1;
  if (i == j) {
    if (i == 0) return Complex(1 + alpha_.re, -alpha_.im);
    if (i == last) return Complex(1 + alpha_.re, alpha_.im);
    z.re = Real(2L, bits_);
    return z;
  }
  if (i == 0 && j == last) return -alpha_.conj();
  if (i == last && j == 0) return -alpha_;
  if (i - j == 1 || j - i == 1) z.re = Real(-1L, bits_);
  return z;
}

std::vector<Complex> LaplacianMatrix::dense() const {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n_ * n_));
  for (long i = 0; i < n_; ++i) {
    for (long j = 0; j < n_; ++j) out.push_back(entry(i, j));
  }
  return out;
}

std::vector<Complex> LaplacianMatrix::apply(const std::vector<Complex>& v) const {
  if (static_cast<long>(v.size()) != n_) throw SizeError("vector length does not match matrix order");
  const long last = n_ - 1;
  const Complex abar = alpha_.conj();
  std::vector<Complex> out;
  out.reserve(v.size());
  // row 0: (1+abar) v0 - v1 - abar v_{n-1} = v0 - v1 + abar (v0 - v_{n-1})
  out.push_back(v[0] - v[1] + abar * (v[0] - v[last]));
  for (long i = 1; i < last; ++i) {
    Complex r = v[i] * Real(2L, bits_);
    r -= v[i - 1];
    r -= v[i + 1];
    out.push_back(std::move(r));
  }
  // row n-1: -alpha v0 - v_{n-2} + (1+alpha) v_{n-1}
  out.push_back(v[last] - v[last - 1] + alpha_ * (v[last] - v[0]));
  return out;
}

std::vector<Complex> LaplacianMatrix::residual(const std::vector<Complex>& v, const Real& lambda) const {
  std::vector<Complex> r = apply(v);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= v[k] * lambda;
  return r;
}

LaplacianMatrix build_matrix(const SpectralProblem& problem, const PrecisionContext& ctx) {
  return LaplacianMatrix(problem, ctx);
}

// ---------------------------------------------------------------------------
// Chebyshev polynomials

namespace {

// Closed forms for x > 1 with x = cosh(u): T_m = cosh(m u), U_m = sinh((m+1)u)/sinh(u).
Real chebyshev_T_outside(long m, const Real& x) { return cosh(acosh(x) * m); }

Real chebyshev_U_outside(long m, const Real& x) {
  const Real u = acosh(x);
  return sinh(u * (m + 1)) / sinh(u);
}

void check_degree(long m) {
  if (m < 0) throw DomainError("Chebyshev degree must be non-negative, got " + std::to_string(m));
}

}  // namespace

Real chebyshev_T(long m, const Real& x) {
  check_degree(m);
  if (abs(x) > 1) {
    const Real v = chebyshev_T_outside(m, abs(x));
    return (x.sign() < 0 && (m % 2) == 1) ? -v : v;
  }
  if (m == 0) return Real(1L, x.bits());
  Real prev(1L, x.bits());
  Real cur = x;
  const Real two_x = ldexp(x, 1);
  for (long k = 1; k < m; ++k) {
    Real next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Real chebyshev_U(long m, const Real& x) {
  check_degree(m);
  if (abs(x) > 1) {
    const Real v = chebyshev_U_outside(m, abs(x));
    return (x.sign() < 0 && (m % 2) == 1) ? -v : v;
  }
  if (m == 0) return Real(1L, x.bits());
  Real prev(1L, x.bits());
  const Real two_x = ldexp(x, 1);
  Real cur = two_x;
  for (long k = 1; k < m; ++k) {
    Real next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Characteristic polynomial

Real charpoly_value(const SpectralProblem& problem, const Real& lambda) {
  const long bits = lambda.bits();
  const long n = problem.n();
  const Real a(problem.alpha_re(), bits);
  const Real y = ldexp(lambda - 2, -1);
  const Real u1 = chebyshev_U(n - 1, y);
  const Real u2 = chebyshev_U(n - 2, y);
  const Real tail = (n % 2 == 0) ? -2 * a : 2 * a;  // 2 (-1)^(n+1) a
  return (lambda - 2 * a) * u1 - 2 * a * u2 + tail;
}

PQ pq_values(const SpectralProblem& problem, const Real& t) {
  const long bits = t.bits();
  const long n = problem.n();
  const Real a(problem.alpha_re(), bits);
  const Real y = ldexp(t, -1);
  const Real un1 = chebyshev_U(n - 1, y);
  const Real tn = chebyshev_T(n, y);
  return PQ{
      .p = (sqr(t) - 4) * un1,
      .q = (1 - a) * tn + a * y * un1,
  };
}

Real charpoly_trig(const SpectralProblem& problem, const Real& x) {
  const long bits = x.bits();
  Real pi(bits);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  if (!(x.sign() > 0 && x < pi)) throw DomainError("charpoly_trig requires 0 < x < pi");
  const long n = problem.n();
  const Real a(problem.alpha_re(), bits);
  Real s1(bits), c1(bits), sn(bits), cn(bits);
  sin_cos(ldexp(x, -1), s1, c1);
  sin_cos(ldexp(x * n, -1), sn, cn);
  const Real q = (1 - a) * cn + a * c1 * sn / s1;
  const Real lead = 4 * s1 * sn / c1;
  const Real v = lead * q;
  return (n % 2 == 0) ? -v : v;  // (-1)^(n+1)
}

Real charpoly_hyp(const SpectralProblem& problem, const Real& x) {
  if (!(x.sign() > 0)) throw DomainError("charpoly_hyp requires x > 0");
  const long n = problem.n();
  const long bits = x.bits();
  const Real a(problem.alpha_re(), bits);
  const Real h1 = ldexp(x, -1);
  const Real hn = ldexp(x * n, -1);
  const Real s1 = sinh(h1);
  const Real c1 = cosh(h1);
  const Real sn = sinh(hn);
  const Real cn = cosh(hn);
  const Real q = (1 - a) * cn + a * c1 * sn / s1;
  const Real v = 4 * s1 * sn / c1 * q;
  return (n % 2 == 0) ? v : -v;  // (-1)^n
}

}  // namespace cyclespec
