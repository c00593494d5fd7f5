#include "cyclespec/model.hpp"

#include <string>

namespace cyclespec {

namespace {

Real pi_at(long bits) {
  Real r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

void check_0_pi(const Real& x, const char* what) {
  if (x.sign() < 0 || x > pi_at(x.bits())) {
    throw DomainError(std::string(what) + " requires 0 <= x <= pi, got " + x.to_string(12));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SpectralProblem

SpectralProblem::SpectralProblem(Rational alpha_re, Rational alpha_im, long n)
    : re_(std::move(alpha_re)), im_(std::move(alpha_im)), n_(n) {
  re_.canonicalize();
  im_.canonicalize();
  if (n_ < 3) throw SizeError("matrix order must be at least 3, got " + std::to_string(n_));
}

Complex SpectralProblem::alpha(const PrecisionContext& ctx) const {
  return {ctx.real(re_), ctx.real(im_)};
}

void SpectralProblem::require_negative() const {
  if (re_ >= 0) throw DomainError("Re(alpha) must be negative, got " + to_string(re_));
}

Rational SpectralProblem::kappa_exact() const {
  require_negative();
  Rational k = (re_ - 1) / re_;
  k.canonicalize();
  return k;
}

long SpectralProblem::n_alpha() const {
  const long fl = floor_to_long(kappa_exact()) + 1;
  return fl > 3 ? fl : 3;
}

int SpectralProblem::compare_n_kappa() const {
  const int c = cmp(Rational(n_), kappa_exact());
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

// ---------------------------------------------------------------------------
// Constants

ModelConstants constants(const SpectralProblem& problem, const PrecisionContext& ctx) {
  problem.require_negative();
  const Rational& a = problem.alpha_re();
  const Rational k = problem.kappa_exact();
  const Rational k2m1 = k * k - 1;

  const Rational Omega = 4 * a * a / (2 * a - 1);
  const Rational beta1 = 16 * k * k / (k2m1 * k2m1);
  const Rational beta2 = 64 * k * k * k / (k2m1 * k2m1 * k2m1);
  const Rational beta3 = 32 * k * k * (k * k + 1) / (k2m1 * k2m1 * k2m1);
  const Rational gamma1 = 4 * k / k2m1;
  const Rational gamma2 = 4 * k * (k * k + 1) / (k2m1 * k2m1);

  // mu = |alpha| / (2 sqrt(2 (a^2 - a)))
  const Real abs_alpha = sqrt(ctx.real(problem.alpha_norm2()));
  const Real mu = abs_alpha / (2 * sqrt(ctx.real(Rational(2 * (a * a - a)))));

  return ModelConstants{
      .kappa = ctx.real(k),
      .Omega = ctx.real(Omega),
      .omega = log(ctx.real(Rational(1 - 2 * a))),
      .N_alpha = problem.n_alpha(),
      .beta1 = ctx.real(beta1),
      .beta2 = ctx.real(beta2),
      .beta3 = ctx.real(beta3),
      .gamma1 = ctx.real(gamma1),
      .gamma2 = ctx.real(gamma2),
      .mu = mu,
  };
}

BetaAlpha betas_from_alpha(const Rational& a, const PrecisionContext& ctx) {
  const Rational d = 1 - 2 * a;
  const Rational am1 = a - 1;
  return BetaAlpha{
      .beta1 = ctx.real(Rational(16 * a * a * am1 * am1 / (d * d))),
      .beta2 = ctx.real(Rational(64 * a * a * a * am1 * am1 * am1 / (d * d * d))),
      .beta3 = ctx.real(Rational(32 * a * a * (1 - a) * (1 - a) * (2 * a * a - 2 * a + 1) / (d * d * d))),
  };
}

// ---------------------------------------------------------------------------
// g and g_minus

Real g_periodic(const Real& x) { return 4 * sqr(sin(ldexp(x, -1))); }

Real g(const Real& x) {
  check_0_pi(x, "g");
  return g_periodic(x);
}

Real g_d1(const Real& x) { return 2 * sin(x); }

Real g_d2(const Real& x) { return 2 * cos(x); }

Real g_minus(const Real& x) {
  if (x.sign() < 0) throw DomainError("g_minus requires x >= 0, got " + x.to_string(12));
  return -4 * sqr(sinh(ldexp(x, -1)));
}

// ---------------------------------------------------------------------------
// eta: arctan form on [0, pi/2], cotangent form on (pi/2, pi]

namespace {

bool upper_half(const Real& x) { return ldexp(x, 1) > pi_at(x.bits()); }

}  // namespace

Real eta(const Real& x, const Real& kappa) {
  check_0_pi(x, "eta");
  const Real half = ldexp(x, -1);
  if (!upper_half(x)) return 2 * atan(kappa * tan(half)) - pi_at(x.bits());
  return -2 * atan(cot(half) / kappa);
}

Real eta_d1(const Real& x, const Real& kappa) {
  check_0_pi(x, "eta_d1");
  const Real k2 = sqr(kappa);
  const Real half = ldexp(x, -1);
  // 1/k + (k^2-1) / (k (1 + k^2 t^2)), t = tan(x/2); with c = cot(x/2) the
  // second term is (k^2-1) c^2 / (k (c^2 + k^2)).
  if (!upper_half(x)) {
    const Real t2 = sqr(tan(half));
    return 1 / kappa + (k2 - 1) / (kappa * (1 + k2 * t2));
  }
  const Real c2 = sqr(cot(half));
  return 1 / kappa + (k2 - 1) * c2 / (kappa * (c2 + k2));
}

Real eta_d2(const Real& x, const Real& kappa) {
  check_0_pi(x, "eta_d2");
  const Real k2 = sqr(kappa);
  const Real half = ldexp(x, -1);
  if (!upper_half(x)) {
    const Real t = tan(half);
    const Real t2 = sqr(t);
    return -kappa * (k2 - 1) * (1 + t2) * t / sqr(1 + k2 * t2);
  }
  const Real c = cot(half);
  const Real c2 = sqr(c);
  return -kappa * (k2 - 1) * (c2 + 1) * c / sqr(c2 + k2);
}

// ---------------------------------------------------------------------------
// phi

namespace {

void check_phi(const Real& x, const Real& kappa) {
  if (x.sign() < 0) throw DomainError("phi requires x >= 0");
  if (!(kappa > 1)) throw DomainError("phi requires kappa > 1");
}

}  // namespace

Real phi(const Real& x, long n, const Real& kappa) {
  check_phi(x, kappa);
  return 2 * atanh(tanh(ldexp(x * n, -1)) / kappa);
}

Real phi_d1(const Real& x, long n, const Real& kappa) {
  check_phi(x, kappa);
  // n k / (k^2 cosh^2 y - sinh^2 y), y = n x / 2
  const Real y = ldexp(x * n, -1);
  return n * kappa / (sqr(kappa) * sqr(cosh(y)) - sqr(sinh(y)));
}

Real phi_d2(const Real& x, long n, const Real& kappa) {
  check_phi(x, kappa);
  // -n^2 k (k^2-1) cosh y sinh y / (k^2 cosh^2 y - sinh^2 y)^2
  const Real y = ldexp(x * n, -1);
  const Real c = cosh(y);
  const Real s = sinh(y);
  const Real k2 = sqr(kappa);
  return -(n * n) * kappa * (k2 - 1) * c * s / sqr(k2 * sqr(c) - sqr(s));
}

Rational ell_argument_squared(const SpectralProblem& problem) {
  problem.require_negative();
  const Rational& a = problem.alpha_re();
  Rational r = (problem.n() * a * (a - 1) - a * a) / (1 - 2 * a);
  r.canonicalize();
  return r;
}

Real ell(const SpectralProblem& problem, const PrecisionContext& ctx) {
  const Rational arg2 = ell_argument_squared(problem);
  if (arg2 < 1) {
    throw DomainError("ell undefined for n=" + std::to_string(problem.n()) +
                      ": arccosh argument below 1 (n < N_alpha)");
  }
  return 2 * acosh(sqrt(ctx.real(arg2))) / problem.n();
}

// ---------------------------------------------------------------------------
// nu and xi (g evaluated with its even periodic extension)

Real nu(const Real& x, const SpectralProblem& problem) {
  check_0_pi(x, "nu");
  const long bits = x.bits();
  const Rational& a = problem.alpha_re();
  const Rational abs2 = problem.alpha_norm2();
  const Real kappa(problem.kappa_exact(), bits);
  const Real e = eta(x, kappa);
  return Real(Rational((1 - a) / 2), bits) * g_periodic(x) - Real(Rational(a / 2), bits) * g_periodic(e) +
         Real(Rational((a - abs2) / 2), bits) * g_periodic(x - e) + Real(Rational(2 * abs2), bits);
}

Real xi(const Real& x, const SpectralProblem& problem) {
  check_0_pi(x, "xi");
  const long bits = x.bits();
  const Rational& a = problem.alpha_re();
  const Rational& b = problem.alpha_im();
  const Rational abs2 = problem.alpha_norm2();
  const Rational one_minus_abs2 = (1 - a) * (1 - a) + b * b;
  const Real kappa(problem.kappa_exact(), bits);
  const Real e = eta(x, kappa);
  const Real gx = g_periodic(x);
  const Real ge = g_periodic(e);
  const Real cx = cos(x);
  return Real(Rational(one_minus_abs2 / 2), bits) * gx * cos(e) + Real(Rational(abs2 / 2), bits) * ge * cx +
         Real(Rational((a - abs2) / 2), bits) * (gx + g_periodic(x + e) - ge) -
         Real(Rational(2 * abs2), bits) * cx;
}

Real grid_point(long n, long j, const PrecisionContext& ctx) { return ctx.pi() * (j - 1) / n; }

}  // namespace cyclespec
