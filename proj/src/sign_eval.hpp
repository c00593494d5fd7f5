#pragma once

// Internal acceleration kernels shared by the inner and outlier solvers.
//
// The bisection solvers ask for signs at about `bits` nested midpoints.
// LocalSign answers them at a precision matched to the bracket depth and,
// once the bracket is small, from a local Taylor model with a rigorous error
// bound, so every reported sign is certified.
//
// EtaTracker and PhiTracker carry tan(x/2) (resp. tanh(nx/2)) along a
// fixed-point iteration and update eta (resp. phi) through exact addition
// formulas, which only need small-argument evaluations once the iteration
// has settled.

#include <vector>

#include "cyclespec/model.hpp"

namespace cyclespec::detail {

/// tan, tanh, atan, atanh of |x| << 1 to `bits` relative bits; power series
/// when short, MPFR otherwise.
Real tan_small(const Real& x, long bits);
Real tanh_small(const Real& x, long bits);
Real atan_small(const Real& x, long bits);
Real atanh_small(const Real& x, long bits);

/// Certified sign of a smooth function along a bisection. Points at shallow
/// bracket depth are evaluated directly at a depth-matched precision; deeper
/// points use a degree-7 Taylor model around a recent point whose truncation
/// and rounding errors are bounded, and the model is rebuilt whenever the
/// bound cannot separate the value from zero.
class LocalSign {
 public:
  static constexpr int kDegree = 7;

  LocalSign(long bits, long model_bits) : bits_(bits), model_bits_(model_bits), center_(64) {}
  virtual ~LocalSign() = default;

  /// Rounds x in place to the precision used for the decision and returns
  /// the sign at x; 0 when the value is below working-precision noise.
  /// `depth` is -log2 of the current bracket width.
  int at(Real& x, long depth);

  long model_builds() const { return builds_; }

 protected:
  /// Value at x (at x's precision) and log2 of its absolute error bound.
  virtual Real direct(const Real& x, double& err_log2) const = 0;
  /// Taylor coefficients at c, computed at c's precision.
  virtual std::vector<Real> expand(const Real& c) const = 0;
  /// log2 bound on the absolute error of coefficient i.
  virtual double coeff_error_log2(int i) const = 0;
  /// log2 bound on the truncation error at distance 2^log2_delta.
  virtual double remainder_log2(double log2_delta) const = 0;
  /// Extra precision for direct evaluation at a given depth.
  virtual long guard_bits() const = 0;

  long bits_;
  long model_bits_;

 private:
  int direct_sign(const Real& x) const;
  int model_sign(const Real& x, long p) const;

  std::vector<Real> coeffs_;
  Real center_;
  bool has_model_ = false;
  long builds_ = 0;
};

/// Sign of q(t) = (t/2) U_{n-1}(t/2) - (1-a) U_{n-2}(t/2) for t in [0, 2].
/// The truncation bound uses Markov's inequality for polynomials of degree n
/// on [-1, 1].
class SecularSign : public LocalSign {
 public:
  SecularSign(const SpectralProblem& problem, long bits);

  /// Recurrence value of q(t) at t's precision.
  Real value(const Real& t) const;

 protected:
  Real direct(const Real& t, double& err_log2) const override;
  std::vector<Real> expand(const Real& c) const override;
  double coeff_error_log2(int i) const override;
  double remainder_log2(double log2_delta) const override;
  long guard_bits() const override;

 private:
  long n_;
  double log2_n_;
  double log2_scale_;      // log2(2 - a), bounds sup|q| / n
  double log2_remainder_;  // log2 of sup|q^(D+1)| / (D+1)! in t units
  Rational one_minus_a_;
};

/// Sign of F(x) = kappa tanh(x/2) - tanh(n x/2) for x > 0; F > 0 exactly
/// where x > phi(x). F is analytic with |F| <= kappa + 1 on discs of radius
/// pi/(2n) around real points, which bounds its Taylor coefficients.
class OutlierSign : public LocalSign {
 public:
  OutlierSign(const SpectralProblem& problem, long bits);

  Real value(const Real& x) const;

 protected:
  Real direct(const Real& x, double& err_log2) const override;
  std::vector<Real> expand(const Real& c) const override;
  double coeff_error_log2(int i) const override;
  double remainder_log2(double log2_delta) const override;
  long guard_bits() const override { return 16; }

 private:
  long n_;
  Rational kappa_exact_;
  double log2_bound_;   // log2(kappa + 1)
  double log2_radius_;  // log2(pi / (2n))
};

/// Carries eta(x) along x -> d + eta(x)/n.
class EtaTracker {
 public:
  EtaTracker(const SpectralProblem& problem, const PrecisionContext& ctx);
  void reset(const Real& x);
  /// Moves to `next` = x + step.
  void advance(const Real& next, const Real& step);
  const Real& value() const { return eta_; }

 private:
  long bits_;
  Real kappa_;
  Real tan_half_;
  Real eta_;
};

/// Carries phi(x) along x -> phi(x).
class PhiTracker {
 public:
  PhiTracker(const SpectralProblem& problem, const PrecisionContext& ctx);
  void reset(const Real& x);
  void advance(const Real& next, const Real& step);
  const Real& value() const { return phi_; }

 private:
  long bits_;
  long n_;
  Real kappa_;
  Real tanh_half_;  // tanh(n x / 2)
  Real phi_;
};

}  // namespace cyclespec::detail
