#include "cyclespec/eigenvectors.hpp"

#include <cmath>
#include <string>

#include "cyclespec/asymptotics.hpp"
#include "cyclespec/charpoly.hpp"

namespace cyclespec {

namespace {

constexpr long kGuardBits = 32;
// Recurrences are re-anchored on directly evaluated values this often.
constexpr long kResync = 64;

enum class Shape { kTrig, kHyperbolic, kOnes, kLinear };

Shape shape_of(const SpectralProblem& problem, const EigenvalueRecord& record) {
  switch (record.root_kind) {
    case RootKind::kInner: return Shape::kTrig;
    case RootKind::kOutlier: return Shape::kHyperbolic;
    case RootKind::kNone: break;
  }
  if (record.j == 2 && problem.compare_n_kappa() == 0) return Shape::kLinear;
  return Shape::kOnes;
}

// sin(m z), m = 0..n, by rotation with periodic re-anchoring.
std::vector<Real> sin_multiples(const Real& z, long n) {
  const long p = z.bits();
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  Real c1(p), s1(p);
  sin_cos(z, s1, c1);
  Real c(1L, p), s(p);
  for (long m = 0; m <= n; ++m) {
    if (m > 0) {
      if (m % kResync == 0) {
        sin_cos(z * m, s, c);
      } else {
        Real nc = c * c1 - s * s1;
        s = s * c1 + c * s1;
        c = std::move(nc);
      }
    }
    out.push_back(s);
  }
  return out;
}

// sinh(m s), m = 0..n.
std::vector<Real> sinh_multiples(const Real& x, long n) {
  const long p = x.bits();
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  const Real e1 = exp(x);
  const Real e1_inv = 1 / e1;
  Real up(1L, p), down(1L, p);
  for (long m = 0; m <= n; ++m) {
    if (m > 0) {
      if (m % kResync == 0) {
        up = exp(x * m);
        down = 1 / up;
      } else {
        up *= e1;
        down *= e1_inv;
      }
    }
    out.push_back(ldexp(up - down, -1));
  }
  return out;
}

std::vector<Complex> combine(const std::vector<Real>& f, const SpectralProblem& problem, long p) {
  // f_k - (1 - conj a) f_{k-1} + conj(a) f_{n-k}
  const long n = problem.n();
  const Real a(problem.alpha_re(), p);
  const Real b(problem.alpha_im(), p);
  const Real one_minus_a = 1 - a;
  std::vector<Complex> v;
  v.reserve(static_cast<std::size_t>(n));
  for (long k = 1; k <= n; ++k) {
    Real re = f[k] - one_minus_a * f[k - 1] + a * f[n - k];
    Real im = b.is_zero() ? Real(p) : -(b * (f[k - 1] + f[n - k]));
    v.emplace_back(std::move(re), std::move(im));
  }
  return v;
}

std::vector<Complex> components_at(const SpectralProblem& problem, const EigenvalueRecord& record, long p) {
  const long n = problem.n();
  switch (shape_of(problem, record)) {
    case Shape::kTrig: return combine(sin_multiples(record.root.at(p), n), problem, p);
    case Shape::kHyperbolic: return combine(sinh_multiples(record.root.at(p), n), problem, p);
    case Shape::kOnes: return std::vector<Complex>(static_cast<std::size_t>(n), Complex(Real(1L, p)));
    case Shape::kLinear: {
      // For Im(alpha) != 0 the double zero eigenvalue has a single eigenvector.
      if (!problem.is_real()) throw DomainError("lambda_2 = 0 is defective for complex alpha with n = kappa");
      std::vector<Complex> v;
      for (long k = 1; k <= n; ++k) v.emplace_back(Real(2 * k - n - 1, p));
      return v;
    }
  }
  return {};
}

Real rational_power(const Rational& q, long e, long bits) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Real(Rational(num, den), bits);
}

Real abs_one_minus_alpha(const SpectralProblem& problem, long bits) {
  const Rational& a = problem.alpha_re();
  const Rational& b = problem.alpha_im();
  return sqrt(Real(Rational((1 - a) * (1 - a) + b * b), bits));
}

}  // namespace

std::vector<Complex> eigenvector_components(const SpectralProblem& problem, const EigenvalueRecord& record,
                                            const PrecisionContext& ctx) {
  std::vector<Complex> v = components_at(problem, record, ctx.bits() + kGuardBits);
  for (auto& c : v) c = Complex(c.re.at(ctx.bits()), c.im.at(ctx.bits()));
  return v;
}

Real direct_norm(const std::vector<Complex>& v) {
  if (v.empty()) return Real(64);
  Real acc(v.front().bits());
  for (const auto& c : v) acc += c.norm();
  return sqrt(acc);
}

Complex inner_product(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) throw SizeError("inner product of vectors with different lengths");
  Complex acc(a.empty() ? 64 : a.front().bits());
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k].conj() * b[k];
  return acc;
}

OutlierNormTerms outlier_norm_terms(const SpectralProblem& problem, const Real& s, const Real& lambda1) {
  const long n = problem.n();
  const long p = s.bits();
  const Real a(problem.alpha_re(), p);
  const Real abs2(problem.alpha_norm2(), p);
  const Real sh_s = sinh(s);
  const Real ratio = n + sinh(s * n) / sh_s;
  const Real sh_half_nm1 = sinh(ldexp(s * (n - 1), -1));
  return OutlierNormTerms{
      .u1 = -ldexp(lambda1, -1) * (n + sinh(ldexp(s * n, 1)) / ldexp(sh_s, 1)),
      .u2 = 2 * abs2 * sqr(sh_half_nm1) * ratio,
      .u3 = 4 * a * sh_half_nm1 * cosh(ldexp(s * n, -1)) * sinh(ldexp(s, -1)) * ratio,
  };
}

Real norm_exact(const SpectralProblem& problem, const EigenvalueRecord& record, const PrecisionContext& ctx) {
  problem.require_negative();
  const long n = problem.n();
  const long p = ctx.bits() + kGuardBits;
  switch (shape_of(problem, record)) {
    case Shape::kOnes: return sqrt(ctx.real(n));
    case Shape::kLinear:
      if (!problem.is_real()) throw DomainError("lambda_2 = 0 is defective for complex alpha with n = kappa");
      return sqrt(ctx.real(Rational(n * (n * n - 1), 3)));
    case Shape::kHyperbolic: {
      // u1 and u3 cancel at order e^{2 n omega}; carry the lost bits.
      const double omega = std::log(1.0 - 2.0 * problem.alpha_re().get_d());
      const long extra = static_cast<long>(std::ceil(2.0 * n * omega / std::log(2.0))) + 16;
      const Real s = record.root.at(p + extra);
      const OutlierNormTerms u = outlier_norm_terms(problem, s, g_minus(s));
      return sqrt(u.u1 + u.u2 + u.u3).at(ctx.bits());
    }
    case Shape::kTrig: break;
  }
  const Real z = record.root.at(p);
  if (record.j % 2 == 1) {
    return (abs_one_minus_alpha(problem, p) * sqrt(ldexp(g(z) * n, -1))).at(ctx.bits());
  }
  const Real kappa(problem.kappa_exact(), p);
  const Real e = eta(z, kappa);
  return sqrt(nu(z, problem) * n + sin(e) / sin(z) * xi(z, problem)).at(ctx.bits());
}

Real norm_exact(const SpectralProblem& problem, long j, const PrecisionContext& ctx) {
  return norm_exact(problem, solve_index(problem.real_part(), j, ctx, Method::kAuto), ctx);
}

Real norm_asympt(const SpectralProblem& problem, long j, const PrecisionContext& ctx) {
  problem.require_negative();
  const long n = problem.n();
  if (j < 1 || j > n) throw DomainError("index j out of range 1..n");
  if (j == 1) {
    if (problem.compare_n_kappa() <= 0) return sqrt(ctx.real(n));
    const ModelConstants c = constants(problem, ctx);
    return c.mu * rational_power(Rational(1 - 2 * problem.alpha_re()), n, ctx.bits());
  }
  if (j == 2 && problem.compare_n_kappa() >= 0) {
    return problem.compare_n_kappa() == 0 ? sqrt(ctx.real(Rational(n * (n * n - 1), 3))) : sqrt(ctx.real(n));
  }
  const Real d = grid_point(n, j, ctx);
  if (j % 2 == 1) return abs_one_minus_alpha(problem, ctx.bits()) * sqrt(ldexp(g(d) * n, -1));
  return sqrt(nu(d, problem) * n);
}

EigenvectorRecord eigenvector(const SpectralProblem& problem, const EigenvalueRecord& record,
                              const PrecisionContext& ctx, bool normalize) {
  problem.require_negative();
  if (record.j < 1 || record.j > problem.n()) throw DomainError("record index out of range");
  if (record.j == 1 && record.root_kind == RootKind::kOutlier && problem.n() < problem.n_alpha()) {
    throw DomainError("outlier eigenvector requires n >= N_alpha");
  }
  const PrecisionContext w = ctx.widened(kGuardBits);
  std::vector<Complex> v = components_at(problem, record, w.bits());

  EigenvectorRecord out(ctx.bits());
  out.j = record.j;
  out.lambda = record.lambda;
  out.norm_exact = norm_exact(problem, record, ctx);
  out.norm_asympt = norm_asympt(problem, record.j, ctx);

  const LaplacianMatrix L(problem, w);
  const Real lambda = record.lambda.at(w.bits());
  out.residual = (direct_norm(L.residual(v, lambda)) / direct_norm(v)).at(ctx.bits());

  const Real scale = normalize ? 1 / out.norm_exact.at(w.bits()) : Real(1L, w.bits());
  out.components.reserve(v.size());
  for (auto& c : v) out.components.emplace_back((c.re * scale).at(ctx.bits()), (c.im * scale).at(ctx.bits()));
  out.normalized = normalize;
  return out;
}

Complex profile_at(const SpectralProblem& problem, const EigenvalueRecord& record, const Real& x) {
  const long p = x.bits();
  const long n = problem.n();
  const Shape shape = shape_of(problem, record);
  if (shape == Shape::kOnes) return Complex(Real(1L, p));
  if (shape == Shape::kLinear) return Complex(2 * x - (n + 1));
  const Real r = record.root.at(p);
  auto f = [&](const Real& t) { return shape == Shape::kTrig ? sin(t * r) : sinh(t * r); };
  const Real a(problem.alpha_re(), p);
  const Real b(problem.alpha_im(), p);
  const Real fx = f(x);
  const Real fxm1 = f(x - 1);
  const Real fnx = f(n - x);
  Real re = fx - (1 - a) * fxm1 + a * fnx;
  Real im = -(b * (fxm1 + fnx));
  return {std::move(re), std::move(im)};
}

std::vector<std::pair<Real, Complex>> profile(const SpectralProblem& problem, const EigenvalueRecord& record,
                                              long samples, const PrecisionContext& ctx) {
  if (samples < 2) throw DomainError("profile needs at least 2 samples");
  std::vector<std::pair<Real, Complex>> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (long i = 0; i < samples; ++i) {
    const Real x = ctx.real(Rational(problem.n() * i, samples - 1));
    out.emplace_back(x, profile_at(problem, record, x));
  }
  return out;
}

}  // namespace cyclespec
