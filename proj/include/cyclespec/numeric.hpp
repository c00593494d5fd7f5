#pragma once

// Arbitrary-precision real and complex arithmetic on top of MPFR.
//
// Every Real carries its own binary precision. Binary operations produce a
// result at the larger of the operand precisions, so a computation started
// from values built with one PrecisionContext stays at that precision. There
// is no global precision state.

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

#include "cyclespec/errors.hpp"

namespace cyclespec {

using Rational = mpq_class;

class Real;

/// Working binary precision and the comparison tolerance derived from it.
class PrecisionContext {
 public:
  static constexpr long kDefaultBits = 3322;
  static constexpr long kMinBits = 64;

  explicit PrecisionContext(long bits = kDefaultBits);

  long bits() const { return bits_; }

  /// 2^(-bits+4).
  Real eps() const;
  /// 2^e at context precision.
  Real pow2(long e) const;

  Real real(long v) const;
  Real real(const Rational& q) const;
  Real parse(std::string_view s) const;
  Real pi() const;

  /// Same context with `extra` more bits.
  PrecisionContext widened(long extra) const { return PrecisionContext(bits_ + extra); }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  long bits_;
};

class Real {
 public:
  /// Zero at the given precision.
  explicit Real(long bits);
  Real(long value, long bits);
  Real(const Rational& q, long bits);
  static Real from_double(double value, long bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Decimal or "p/q" string; throws ParseError.
  static Real parse(std::string_view text, long bits);

  long bits() const { return static_cast<long>(mpfr_get_prec(v_)); }
  /// Copy rounded (or widened) to `bits`.
  Real at(long bits) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  /// Binary exponent e with 0.5 <= |x| 2^-e < 1; very negative for zero.
  long exponent() const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant decimal digits.
  std::string to_string(int digits) const;
  /// Enough digits to round-trip at this precision.
  std::string to_string() const;

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator+=(long o);
  Real& operator-=(long o);
  Real& operator*=(long o);
  Real& operator/=(long o);

  friend Real operator+(Real a, const Real& b);
  friend Real operator-(Real a, const Real& b);
  friend Real operator*(Real a, const Real& b);
  friend Real operator/(Real a, const Real& b);
  friend Real operator+(Real a, long b) { return a += b; }
  friend Real operator-(Real a, long b) { return a -= b; }
  friend Real operator*(Real a, long b) { return a *= b; }
  friend Real operator/(Real a, long b) { return a /= b; }
  friend Real operator+(long a, Real b) { return b += a; }
  friend Real operator*(long a, Real b) { return b *= a; }
  friend Real operator-(long a, const Real& b);
  friend Real operator/(long a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b);

 private:
  mpfr_t v_;
};

// Elementary functions. Results carry the argument's precision; domain
// violations raise DomainError.
Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
Real cot(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real atan(const Real& x);
Real atanh(const Real& x);
Real acos(const Real& x);
Real acosh(const Real& x);
Real sqr(const Real& x);
Real pow(const Real& x, long n);
/// x * 2^e, exact.
Real ldexp(const Real& x, long e);
Real floor(const Real& x);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
/// sin and cos in one call.
void sin_cos(const Real& x, Real& s, Real& c);
/// 2^e at the given precision.
Real pow2(long e, long bits);

enum class Elementary {
  kSqrt,
  kExp,
  kLog,
  kSin,
  kCos,
  kTan,
  kSinh,
  kCosh,
  kTanh,
  kAtan,
  kAtanh,
  kAcosh,
};

std::string_view to_string(Elementary f);
/// Parses "sqrt", "arctanh", ...; throws ParseError.
Elementary parse_elementary(std::string_view name);

/// Evaluates `f(x)` at ctx precision (x is rounded to ctx first).
Real eval_elementary(Elementary f, const Real& x, const PrecisionContext& ctx);

/// ulp distance |a-b| / ulp(b) at b's precision.
double ulp_distance(const Real& a, const Real& b);

struct Complex {
  Real re;
  Real im;

  explicit Complex(long bits) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Real r) : re(std::move(r)), im(re.bits()) {}

  long bits() const { return re.bits(); }

  Complex conj() const { return {re, -im}; }
  /// |z|^2
  Real norm() const { return sqr(re) + sqr(im); }
  Real abs() const { return sqrt(norm()); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Real& o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator*(Complex a, const Real& b) { return a *= b; }
  friend Complex operator*(const Real& b, Complex a) { return a *= b; }
  Complex operator-() const { return {-re, -im}; }
};

/// Exact rational helpers.
Rational parse_rational(std::string_view text);
/// floor(q) as a long.
long floor_to_long(const Rational& q);
std::string to_string(const Rational& q);

}  // namespace cyclespec
