#include "sign_eval.hpp"

#include <algorithm>
#include <cmath>

namespace cyclespec::detail {

namespace {

// Series are used only when they need at most this many terms.
constexpr long kMaxSeriesTerms = 24;

long series_terms(const Real& x, long bits) {
  const long k = -x.exponent();
  if (k <= 0) return kMaxSeriesTerms + 1;
  return bits / (2 * k) + 1;
}

// sum_{i>=0} sign^i x^(2i+1) / (2i+1)   (atan for sign=-1, atanh for sign=+1)
Real odd_reciprocal_series(const Real& x, long p, bool alternating) {
  Real xp = x.at(p);
  const Real x2 = sqr(xp);
  Real sum = xp;
  Real power = xp;
  for (long i = 1;; ++i) {
    power *= x2;
    Real term = power / (2 * i + 1);
    if (alternating && (i % 2 == 1)) term = -term;
    sum += term;
    if (term.is_zero() || term.exponent() < sum.exponent() - p - 4) break;
  }
  return sum;
}

// sin/cos (hyperbolic=false) or sinh/cosh (hyperbolic=true) series.
void sc_series(const Real& x, long p, bool hyperbolic, Real& s, Real& c) {
  const Real xp = x.at(p);
  const Real x2 = hyperbolic ? sqr(xp) : -sqr(xp);
  s = xp;
  c = Real(1L, p);
  Real ts = xp;
  Real tc(1L, p);
  for (long k = 1;; ++k) {
    tc = tc * x2 / ((2 * k - 1) * (2 * k));
    ts = ts * x2 / ((2 * k) * (2 * k + 1));
    c += tc;
    s += ts;
    if (tc.exponent() < -p - 4) break;
  }
}

}  // namespace

Real tan_small(const Real& x, long bits) {
  if (x.is_zero()) return Real(bits);
  const long p = bits + 8;
  if (series_terms(x, p) > kMaxSeriesTerms) return tan(x.at(p)).at(bits);
  Real s(p), c(p);
  sc_series(x, p, false, s, c);
  return (s / c).at(bits);
}

Real tanh_small(const Real& x, long bits) {
  if (x.is_zero()) return Real(bits);
  const long p = bits + 8;
  if (series_terms(x, p) > kMaxSeriesTerms) return tanh(x.at(p)).at(bits);
  Real s(p), c(p);
  sc_series(x, p, true, s, c);
  return (s / c).at(bits);
}

Real atan_small(const Real& x, long bits) {
  if (x.is_zero()) return Real(bits);
  const long p = bits + 8;
  if (series_terms(x, p) > kMaxSeriesTerms) return atan(x.at(p)).at(bits);
  return odd_reciprocal_series(x, p, true).at(bits);
}

Real atanh_small(const Real& x, long bits) {
  if (x.is_zero()) return Real(bits);
  const long p = bits + 8;
  if (series_terms(x, p) > kMaxSeriesTerms) return atanh(x.at(p)).at(bits);
  return odd_reciprocal_series(x, p, false).at(bits);
}

// ---------------------------------------------------------------------------
// LocalSign

namespace {

// Direct evaluation is used while the bracket is wider than 2^-kModelDepth.
constexpr long kModelDepth = 48;

bool separated(const Real& v, double err_log2) {
  return !v.is_zero() && static_cast<double>(v.exponent() - 1) > err_log2 + 1;
}

}  // namespace

int LocalSign::direct_sign(const Real& x) const {
  long p = x.bits();
  for (;;) {
    double err = 0;
    const Real v = direct(x.at(p), err);
    if (separated(v, err)) return v.sign();
    if (p >= model_bits_) return 0;
    p = std::min(2 * p, model_bits_);
  }
}

int LocalSign::model_sign(const Real& x, long p) const {
  const int d = kDegree;
  Real delta(p);
  mpfr_sub(delta.get(), x.get(), center_.get(), MPFR_RNDN);
  const double ld = delta.is_zero() ? -1e9 : static_cast<double>(delta.exponent());

  Real v = coeffs_[d].at(p);
  for (int i = d - 1; i >= 0; --i) {
    v *= delta;
    v += coeffs_[i];
    mpfr_prec_round(v.get(), p, MPFR_RNDN);
  }

  double smax = -1e18;
  double coef_err = -1e18;
  for (int i = 0; i <= d; ++i) {
    if (!coeffs_[i].is_zero()) smax = std::max(smax, static_cast<double>(coeffs_[i].exponent()) + i * ld);
    coef_err = std::max(coef_err, coeff_error_log2(i) + i * ld);
  }
  // Horner rounding, rounding of delta (through the slope), coefficient
  // error and truncation.
  const double horner = smax + 2 * std::log2(d + 1.0) - static_cast<double>(p) + 2;
  const double slope = coeffs_[1].is_zero() ? -1e18
                                            : static_cast<double>(coeffs_[1].exponent()) + ld -
                                                  static_cast<double>(p) + 1;
  const double bound = std::max({horner, slope, coef_err, remainder_log2(ld)}) + 2;
  return separated(v, bound) ? v.sign() : 0;
}

int LocalSign::at(Real& x, long depth) {
  const long pt = std::min(bits_ + 8, std::max(64L, depth + 64 + guard_bits()));
  x = x.at(pt);
  if (depth < kModelDepth) return direct_sign(x.at(pt + 16));

  if (has_model_) {
    const int s = model_sign(x, std::min(pt + 16, model_bits_));
    if (s != 0) return s;
  }
  center_ = x.at(model_bits_);
  coeffs_ = expand(center_);
  has_model_ = true;
  ++builds_;
  return separated(coeffs_[0], coeff_error_log2(0)) ? coeffs_[0].sign() : 0;
}

// ---------------------------------------------------------------------------
// SecularSign

SecularSign::SecularSign(const SpectralProblem& problem, long bits)
    : LocalSign(bits, bits + 64 + 4 * static_cast<long>(std::ceil(std::log2(static_cast<double>(problem.n()))))),
      n_(problem.n()),
      log2_n_(std::log2(static_cast<double>(problem.n()))),
      log2_scale_(std::log2(2.0 - problem.alpha_re().get_d())),
      one_minus_a_(1 - problem.alpha_re()) {
  // Markov: |q^(k)| <= |q|_inf T_n^(k)(1) on [-1, 1] in y = t/2, with
  // |q|_inf <= n (2 - a) and T_n^(k)(1) = prod_{i<k} (n^2 - i^2) / (2i + 1).
  const int k = kDegree + 1;
  double acc = log2_n_ + log2_scale_;
  const double n2 = static_cast<double>(n_) * static_cast<double>(n_);
  for (int i = 0; i < k; ++i) {
    const double f = n2 - static_cast<double>(i) * i;
    if (f <= 0) {
      acc = -1e300;  // degree below k: the remainder vanishes
      break;
    }
    acc += std::log2(f) - std::log2(2.0 * i + 1.0);
  }
  for (int i = 2; i <= k; ++i) acc -= std::log2(static_cast<double>(i));
  log2_remainder_ = acc - k;  // d/dt = (1/2) d/dy
}

long SecularSign::guard_bits() const { return 3 * static_cast<long>(std::ceil(log2_n_)); }

Real SecularSign::value(const Real& t) const {
  const long p = t.bits();
  const Real y = ldexp(t, -1);
  Real prev(1L, p);
  Real cur = t;  // U_1(y) = 2y
  for (long k = 2; k <= n_ - 1; ++k) {
    Real next = t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return y * cur - Real(one_minus_a_, p) * prev;
}

Real SecularSign::direct(const Real& t, double& err_log2) const {
  err_log2 = 3 * log2_n_ + log2_scale_ - static_cast<double>(t.bits()) + 4;
  return value(t);
}

std::vector<Real> SecularSign::expand(const Real& c) const {
  // Power series in delta_y of U_k(y0 + delta_y), truncated at degree D.
  const long p = c.bits();
  const int d = kDegree;
  const Real y0 = ldexp(c, -1);
  const Real& two_y = c;
  std::vector<Real> prev(d + 1, Real(p));
  std::vector<Real> cur(d + 1, Real(p));
  std::vector<Real> next(d + 1, Real(p));
  prev[0] = Real(1L, p);
  cur[0] = two_y;
  cur[1] = Real(2L, p);
  for (long k = 2; k <= n_ - 1; ++k) {
    for (int i = 0; i <= d; ++i) {
      mpfr_mul(next[i].get(), two_y.get(), cur[i].get(), MPFR_RNDN);
      if (i > 0) next[i] += ldexp(cur[i - 1], 1);
      next[i] -= prev[i];
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  // q = (y0 + delta_y) U_{n-1} - (1-a) U_{n-2}; then delta_y = delta_t / 2.
  const Real oma(one_minus_a_, p);
  std::vector<Real> out(d + 1, Real(p));
  for (int i = 0; i <= d; ++i) {
    out[i] = y0 * cur[i] - oma * prev[i];
    if (i > 0) out[i] += cur[i - 1];
    out[i] = ldexp(out[i], -i);
  }
  return out;
}

double SecularSign::coeff_error_log2(int i) const {
  return (3 + 2 * i) * log2_n_ + log2_scale_ - static_cast<double>(model_bits_) + 8 - i;
}

double SecularSign::remainder_log2(double log2_delta) const {
  return log2_remainder_ + (kDegree + 1) * log2_delta;
}

// ---------------------------------------------------------------------------
// OutlierSign

OutlierSign::OutlierSign(const SpectralProblem& problem, long bits)
    : LocalSign(bits, bits + 64),
      n_(problem.n()),
      kappa_exact_(problem.kappa_exact()),
      log2_bound_(std::log2(problem.kappa_exact().get_d() + 1.0)),
      log2_radius_(std::log2(M_PI / (2.0 * static_cast<double>(problem.n())))) {}

Real OutlierSign::value(const Real& x) const {
  const Real kappa(kappa_exact_, x.bits());
  return kappa * tanh(ldexp(x, -1)) - tanh(ldexp(x * n_, -1));
}

Real OutlierSign::direct(const Real& x, double& err_log2) const {
  err_log2 = std::log2(kappa_exact_.get_d() + 2.0 + static_cast<double>(n_) * std::fabs(x.to_double())) -
             static_cast<double>(x.bits()) + 3;
  return value(x);
}

namespace {

// Taylor coefficients of tanh(h0 + eps) from y' = 1 - y^2, scaled by
// eps = scale * delta.
std::vector<Real> tanh_series(const Real& h0, const Real& scale, int degree) {
  const long p = h0.bits();
  std::vector<Real> y(degree + 1, Real(p));
  y[0] = h0;
  for (int k = 0; k < degree; ++k) {
    Real acc(p);
    for (int i = 0; i <= k; ++i) acc += y[i] * y[k - i];
    if (k == 0) acc -= 1;
    y[k + 1] = -acc / (k + 1);
  }
  Real power(1L, p);
  for (int k = 1; k <= degree; ++k) {
    power *= scale;
    y[k] *= power;
  }
  return y;
}

}  // namespace

std::vector<Real> OutlierSign::expand(const Real& c) const {
  const long p = c.bits();
  const Real kappa(kappa_exact_, p);
  const Real half(Rational(1, 2), p);
  const Real half_n(Rational(n_, 2), p);
  const std::vector<Real> a = tanh_series(tanh(ldexp(c, -1)), half, kDegree);
  const std::vector<Real> b = tanh_series(tanh(c * half_n), half_n, kDegree);
  std::vector<Real> out;
  out.reserve(kDegree + 1);
  for (int i = 0; i <= kDegree; ++i) out.push_back(kappa * a[i] - b[i]);
  return out;
}

double OutlierSign::coeff_error_log2(int i) const {
  return log2_bound_ - i * log2_radius_ - static_cast<double>(model_bits_) + 12;
}

double OutlierSign::remainder_log2(double log2_delta) const {
  // Cauchy: |F_k| <= (kappa+1) r^-k, so the tail is at most
  // 2 (kappa+1) (|delta|/r)^(D+1) while |delta| <= r/2.
  if (log2_delta - log2_radius_ > -1) return 1e18;
  return 1 + log2_bound_ + (kDegree + 1) * (log2_delta - log2_radius_);
}

// ---------------------------------------------------------------------------
// EtaTracker

namespace {

// Steps larger than 2^-kIncrementalDepth are taken by direct evaluation.
constexpr long kIncrementalDepth = 96;

}  // namespace

EtaTracker::EtaTracker(const SpectralProblem& problem, const PrecisionContext& ctx)
    : bits_(ctx.bits()), kappa_(ctx.real(problem.kappa_exact())), tan_half_(ctx.bits()), eta_(ctx.bits()) {}

void EtaTracker::reset(const Real& x) {
  tan_half_ = tan(ldexp(x.at(bits_), -1));
  Real pi(bits_);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  eta_ = 2 * atan(kappa_ * tan_half_) - pi;
}

void EtaTracker::advance(const Real& next, const Real& step) {
  if (step.is_zero()) return;
  const long k = -step.exponent();
  if (k < kIncrementalDepth) {
    reset(next);
    return;
  }
  // tan((x+d)/2) = (T + tau) / (1 - T tau), tau = tan(d/2);
  // eta(x+d) - eta(x) = 2 atan(k tau (1+T^2) / (1 - T tau + k^2 T (T + tau))).
  const long rel = std::max(64L, bits_ - k + 24);
  const Real tau = tan_small(ldexp(step, -1), rel);
  const Real& T = tan_half_;
  const Real t_new = (T + tau) / (1 - T * tau);

  const Real tl = T.at(rel);
  const Real kl = kappa_.at(rel);
  const Real u = kl * tau * (1 + sqr(tl)) / (1 - tl * tau + sqr(kl) * tl * (tl + tau));
  eta_ += ldexp(atan_small(u, rel), 1);
  tan_half_ = t_new.at(bits_);
}

// ---------------------------------------------------------------------------
// PhiTracker

PhiTracker::PhiTracker(const SpectralProblem& problem, const PrecisionContext& ctx)
    : bits_(ctx.bits()),
      n_(problem.n()),
      kappa_(ctx.real(problem.kappa_exact())),
      tanh_half_(ctx.bits()),
      phi_(ctx.bits()) {}

void PhiTracker::reset(const Real& x) {
  tanh_half_ = tanh(ldexp(x.at(bits_) * n_, -1));
  phi_ = 2 * atanh(tanh_half_ / kappa_);
}

void PhiTracker::advance(const Real& next, const Real& step) {
  if (step.is_zero()) return;
  const Real eps = ldexp(step * n_, -1);
  const long k = -eps.exponent();
  if (k < kIncrementalDepth) {
    reset(next);
    return;
  }
  // H' - H = tau (1 - H^2) / (1 + H tau), tau = tanh(n d / 2);
  // phi' - phi = 2 atanh((H' - H) / (k (1 - H H' / k^2))).
  const long rel = std::max(64L, bits_ - k + 32);
  const Real tau = tanh_small(eps, rel);
  const Real& H = tanh_half_;
  const Real dh = tau * ((1 - H) * (1 + H)) / (1 + H * tau);
  const Real h_new = H + dh;

  const Real kl = kappa_.at(rel);
  const Real w = dh.at(rel) * kl / (sqr(kl) - H.at(rel) * h_new.at(rel));
  phi_ += ldexp(atanh_small(w, rel), 1);
  tanh_half_ = h_new.at(bits_);
}

}  // namespace cyclespec::detail
