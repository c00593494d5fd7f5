#include "cyclespec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

namespace cyclespec {

namespace {

constexpr long kGuardBits = 32;
constexpr long kInertiaGuardBits = 64;
constexpr int kNudgeRetries = 3;

struct DetValue {
  Real value;
  Real slope;
};

// det(lambda I - L) and its lambda-derivative. The matrix lambda I - L has
// diagonal (lambda-1-conj(a), lambda-2, ..., lambda-2, lambda-1-a), unit
// off-diagonals and corners conj(a) at (1,n), a at (n,1).
DetValue det_with_slope(const SpectralProblem& problem, const Real& lambda) {
  const long n = problem.n();
  const long p = lambda.bits();
  const Complex alpha{Real(problem.alpha_re(), p), Real(problem.alpha_im(), p)};
  const Complex one(Real(1L, p));
  const Complex lam(lambda);
  const Complex mid = lam - Complex(Real(2L, p));
  const Complex first = lam - one - alpha.conj();
  const Complex last = lam - one - alpha;

  // Full leading minors D_k with derivatives.
  Complex d_prev(one), d_cur(first);
  Complex s_prev(p), s_cur(one);
  for (long k = 2; k <= n; ++k) {
    const Complex& m = k == n ? last : mid;
    Complex d_next = m * d_cur - d_prev;
    Complex s_next = d_cur + m * s_cur - s_prev;
    d_prev = std::move(d_cur);
    d_cur = std::move(d_next);
    s_prev = std::move(s_cur);
    s_cur = std::move(s_next);
  }
  // Minor on rows/columns 2..n-1.
  Complex e_prev(one), e_cur(one);
  Complex t_prev(p), t_cur(p);
  for (long k = 2; k <= n - 1; ++k) {
    Complex e_next = (k == 2 ? mid * e_cur : mid * e_cur - e_prev);
    Complex t_next = (k == 2 ? e_cur + mid * t_cur : e_cur + mid * t_cur - t_prev);
    e_prev = std::move(e_cur);
    e_cur = std::move(e_next);
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
  }
  const Real abs2(problem.alpha_norm2(), p);
  const Real corner = ldexp(alpha.re, 1) * (n % 2 == 1 ? 1 : -1);
  return {d_cur.re - abs2 * e_cur.re + corner, s_cur.re - abs2 * t_cur.re};
}

Rational omega_exact(const Rational& a) { return Rational(4 * a * a / (2 * a - 1)); }

InertiaResult inertia_once(const SpectralProblem& problem, const Real& shift, const Real& tiny, bool& singular) {
  const long n = problem.n();
  const long p = shift.bits();
  const Real a(problem.alpha_re(), p);
  const Real end = 1 + a - shift;  // A_11 = A_nn
  const Real inner = 2 - shift;    // A_ii, 1 < i < n
  InertiaResult r(p);
  r.shift = shift;
  r.pivots.reserve(static_cast<std::size_t>(n));
  singular = false;

  // Tridiagonal block 1..n-1 (off-diagonals -1) bordered by the last
  // column u = (-a, 0, ..., 0, -1); w solves the unit lower factor against u.
  Real piv = end;
  Real w = -a;
  Real schur = end;
  for (long i = 1; i <= n - 1; ++i) {
    if (i > 1) {
      const Real l = -1 / piv;
      piv = inner - 1 / piv;
      w = (i == n - 1 ? Real(-1L, p) : Real(p)) - l * w;
    }
    if (abs(piv) <= tiny) {
      singular = true;
      return r;
    }
    schur -= sqr(w) / piv;
    if (piv.sign() < 0) ++r.negatives;
    r.pivots.push_back(piv);
  }
  if (abs(schur) <= tiny) {
    singular = true;
    return r;
  }
  if (schur.sign() < 0) ++r.negatives;
  r.pivots.push_back(std::move(schur));
  return r;
}

struct Node {
  Real lo;
  long c_lo;
  Real hi;
  long c_hi;
};

// Bracketed Newton on the determinant with precision doubling. The root is
// simple inside [node.lo, node.hi]; the determinant keeps the sign it has at
// node.lo to the left of it.
Real refine(const SpectralProblem& problem, const Node& node, long bits, long guard) {
  const long start = 96;
  const int s_lo = det_with_slope(problem, node.lo.at(bits + guard)).value.sign();
  Real a = node.lo;
  Real b = node.hi;
  Real x = ldexp(a + b, -1);
  long p = std::min(start, bits);
  for (long it = 0; it < 4 * bits; ++it) {
    const DetValue f = det_with_slope(problem, x.at(p + guard));
    if (f.value.is_zero()) return x;
    (f.value.sign() == s_lo ? a : b) = x;
    const Real scale = max(Real(1L, bits), abs(x));
    if (p == bits && !f.slope.is_zero() && abs(f.value / f.slope) <= ldexp(scale, -bits + 8)) return x;
    Real next = f.slope.is_zero() ? ldexp(a + b, -1) : (x - f.value / f.slope).at(bits);
    if (!(next > a && next < b)) next = ldexp(a + b, -1);
    const Real step = abs(next - x);
    x = std::move(next);
    if (p < bits) {
      if (step <= ldexp(scale, -p / 2)) {
        // Signs decided at precision p may be wrong within its noise.
        const Real slack = ldexp(scale, -p + 16);
        a = max(node.lo, a - slack);
        b = min(node.hi, b + slack);
        p = std::min(2 * p, bits);
      }
      continue;
    }
    if (step <= ldexp(scale, -bits + 8) || b - a <= ldexp(scale, -bits + 4)) return x;
  }
  throw ConvergenceError("oracle refinement did not converge");
}

}  // namespace

Real det_recurrence(const SpectralProblem& problem, const Real& lambda, const PrecisionContext& ctx) {
  return det_with_slope(problem, lambda.at(ctx.bits())).value;
}

InertiaResult count_below(const SpectralProblem& problem, const Real& shift, const PrecisionContext& ctx) {
  if (problem.n() < 3) throw DomainError("matrix order must be >= 3");
  const long cap = 4 * ctx.bits() + 256;
  const Real nudge = 4 * ctx.eps();
  Real s = shift;
  for (int attempt = 0; attempt <= kNudgeRetries; ++attempt) {
    // A leading pivot of size 2^-k makes the Schur complement cancel about
    // 2k bits; rerun with that many extra bits until the loss is covered.
    long p = ctx.bits() + kInertiaGuardBits;
    bool singular = false;
    for (;;) {
      InertiaResult r = inertia_once(problem, s.at(p), pow2(-p + 8, p), singular);
      if (singular) break;
      long lost = 0;
      for (std::size_t i = 0; i + 1 < r.pivots.size(); ++i) lost = std::max(lost, -2 * r.pivots[i].exponent());
      if (lost + kInertiaGuardBits <= p - ctx.bits() || p >= cap) {
        r.shift = s.at(ctx.bits());
        for (auto& piv : r.pivots) piv = piv.at(ctx.bits());
        return r;
      }
      p = std::min(cap, ctx.bits() + lost + 2 * kInertiaGuardBits);
    }
    s += nudge;
  }
  throw SingularShift("shift " + shift.to_string(20) + " coincides with an eigenvalue after " +
                      std::to_string(kNudgeRetries) + " nudges");
}

std::vector<Real> oracle_spectrum(const SpectralProblem& problem, const PrecisionContext& ctx) {
  const long n = problem.n();
  if (n > kOracleMaxOrder) {
    throw SizeError("oracle limited to n <= " + std::to_string(kOracleMaxOrder) + " (got " + std::to_string(n) + ")");
  }
  problem.require_negative();
  const PrecisionContext w = ctx.widened(kGuardBits);
  const SpectralProblem real = problem.real_part();
  const Real cluster_width = w.pow2(-ctx.bits() / 2);

  auto count = [&](Real& x) {
    InertiaResult r = count_below(real, x, w);
    x = r.shift;
    return r.negatives;
  };

  Real lo = w.real(Rational(omega_exact(problem.alpha_re()) - 1));
  Real hi = w.real(5);
  const long c_lo = count(lo);
  const long c_hi = count(hi);
  if (c_lo != 0 || c_hi != n) throw VerificationFailure("spectrum not contained in [Omega - 1, 5]");

  std::vector<Node> stack{{lo, c_lo, hi, c_hi}};
  std::vector<Node> simple;
  std::vector<std::pair<Real, long>> clusters;
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    const long k = node.c_hi - node.c_lo;
    if (k == 0) continue;
    if (k == 1) {
      simple.push_back(std::move(node));
      continue;
    }
    if (node.hi - node.lo <= cluster_width) {
      clusters.emplace_back(ldexp(node.lo + node.hi, -1), k);
      continue;
    }
    Real mid = ldexp(node.lo + node.hi, -1);
    const long c_mid = count(mid);
    stack.push_back({mid, c_mid, std::move(node.hi), node.c_hi});
    stack.push_back({std::move(node.lo), node.c_lo, std::move(mid), c_mid});
  }

  // Bits lost to cancellation: the minors grow like (t + sqrt(t^2 - 1))^n
  // with t = (2 - lambda) / 2 at the left end of the spectrum.
  const double t = (2.0 - lo.to_double()) / 2.0;
  const long growth = static_cast<long>(std::ceil(n * std::log2(t + std::sqrt(t * t - 1.0)))) + 32;

  std::vector<Real> roots(simple.size(), Real(w.bits()));
  std::vector<std::exception_ptr> errors(simple.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < simple.size(); ++i) {
    try {
      roots[i] = refine(real, simple[i], w.bits(), growth);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& [x, k] : clusters) {
    for (long m = 0; m < k; ++m) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end(), [](const Real& u, const Real& v) { return u < v; });
  std::vector<Real> out;
  out.reserve(roots.size());
  for (const auto& x : roots) out.push_back(x.at(ctx.bits()));
  return out;
}

}  // namespace cyclespec
