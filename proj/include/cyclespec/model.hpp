#pragma once

// Problem definition and the scalar functions of the weighted-cycle
// Laplacian: the eigenvalue parametrizations g and g_minus, the phase
// corrections eta and phi, and the constants of the outlier expansion.

#include "cyclespec/numeric.hpp"

namespace cyclespec {

/// The pair (alpha, n). alpha is kept as an exact rational (real and
/// imaginary part); all eigenvalue machinery uses only Re(alpha).
class SpectralProblem {
 public:
  SpectralProblem(Rational alpha_re, Rational alpha_im, long n);
  SpectralProblem(Rational alpha_re, long n) : SpectralProblem(std::move(alpha_re), Rational(0), n) {}

  const Rational& alpha_re() const { return re_; }
  const Rational& alpha_im() const { return im_; }
  long n() const { return n_; }

  bool is_real() const { return im_ == 0; }
  /// Same alpha, different order.
  SpectralProblem with_n(long n) const { return {re_, im_, n}; }
  /// Re(alpha) only.
  SpectralProblem real_part() const { return {re_, Rational(0), n_}; }

  Complex alpha(const PrecisionContext& ctx) const;
  /// |alpha|^2, exact.
  Rational alpha_norm2() const { return re_ * re_ + im_ * im_; }

  /// kappa = (a-1)/a for a = Re(alpha) < 0; throws DomainError otherwise.
  Rational kappa_exact() const;
  /// max{3, floor(kappa)+1}.
  long n_alpha() const;
  /// Sign of n - kappa (exact).
  int compare_n_kappa() const;

  /// Throws DomainError unless Re(alpha) < 0.
  void require_negative() const;

 private:
  Rational re_;
  Rational im_;
  long n_;
};

struct ModelConstants {
  Real kappa;
  Real Omega;
  Real omega;
  long N_alpha;
  Real beta1;
  Real beta2;
  Real beta3;
  Real gamma1;
  Real gamma2;
  Real mu;
};

/// Constants of Re(alpha) < 0. Rational ones are exact before rounding.
ModelConstants constants(const SpectralProblem& problem, const PrecisionContext& ctx);

/// beta_1..3 computed from alpha directly (the kappa-free form).
struct BetaAlpha {
  Real beta1;
  Real beta2;
  Real beta3;
};
BetaAlpha betas_from_alpha(const Rational& alpha, const PrecisionContext& ctx);

/// g(x) = 4 sin^2(x/2) on [0, pi].
Real g(const Real& x);
/// g extended evenly and 2pi-periodically (4 sin^2(x/2) on all of R).
Real g_periodic(const Real& x);
Real g_d1(const Real& x);
Real g_d2(const Real& x);
/// g_minus(x) = 2 - 2 cosh(x) = -4 sinh^2(x/2) on [0, inf).
Real g_minus(const Real& x);

/// eta(x) = 2 arctan(kappa tan(x/2)) - pi on [0, pi].
Real eta(const Real& x, const Real& kappa);
Real eta_d1(const Real& x, const Real& kappa);
Real eta_d2(const Real& x, const Real& kappa);

/// phi(x) = 2 arctanh(tanh(n x / 2) / kappa) on [0, inf).
Real phi(const Real& x, long n, const Real& kappa);
Real phi_d1(const Real& x, long n, const Real& kappa);
Real phi_d2(const Real& x, long n, const Real& kappa);

/// Point where phi' = 1; requires n >= N_alpha.
Real ell(const SpectralProblem& problem, const PrecisionContext& ctx);
/// Rational argument of the arccosh in ell (before the square root).
Rational ell_argument_squared(const SpectralProblem& problem);

/// Mean-square profile of the inner eigenvector components.
Real nu(const Real& x, const SpectralProblem& problem);
/// Boundary correction in the exact even-j norm.
Real xi(const Real& x, const SpectralProblem& problem);

/// d_{n,j} = (j-1) pi / n.
Real grid_point(long n, long j, const PrecisionContext& ctx);

}  // namespace cyclespec
