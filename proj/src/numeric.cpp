#include "cyclespec/numeric.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

namespace cyclespec {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

// Grows `a` in place to at least `bits` without changing its value.
void widen_to(Real& a, long bits) {
  if (a.bits() < bits) mpfr_prec_round(a.get(), bits, kRnd);
}

template <typename F>
Real unary(const Real& x, F&& f) {
  Real r(x.bits());
  f(r.get(), x.get(), kRnd);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// PrecisionContext

PrecisionContext::PrecisionContext(long bits) : bits_(bits) {
  if (bits < kMinBits) {
    throw DomainError("precision must be at least 64 bits, got " + std::to_string(bits));
  }
}

Real PrecisionContext::eps() const { return pow2(-bits_ + 4); }

Real PrecisionContext::pow2(long e) const { return cyclespec::pow2(e, bits_); }

Real PrecisionContext::real(long v) const { return Real(v, bits_); }

Real PrecisionContext::real(const Rational& q) const { return Real(q, bits_); }

Real PrecisionContext::parse(std::string_view s) const { return Real::parse(s, bits_); }

Real PrecisionContext::pi() const {
  Real r(bits_);
  mpfr_const_pi(r.get(), kRnd);
  return r;
}

// ---------------------------------------------------------------------------
// Real

Real::Real(long bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, long bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, value, kRnd);
}

Real::Real(const Rational& q, long bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, q.get_mpq_t(), kRnd);
}

Real Real::from_double(double value, long bits) {
  Real r(bits);
  mpfr_set_d(r.v_, value, kRnd);
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, kRnd);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, kRnd);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::parse(std::string_view text, long bits) {
  const Rational q = parse_rational(text);
  return Real(q, bits);
}

Real Real::at(long bits) const {
  Real r(bits);
  mpfr_set(r.v_, v_, kRnd);
  return r;
}

long Real::exponent() const {
  if (mpfr_zero_p(v_)) return std::numeric_limits<long>::min() / 4;
  return static_cast<long>(mpfr_get_exp(v_));
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  digits = std::max(digits, 1);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string Real::to_string() const {
  // Decimal digits that round-trip a p-bit binary value.
  const int digits = static_cast<int>(std::ceil(static_cast<double>(bits()) * 0.30102999566398120)) + 1;
  return to_string(digits);
}

Real Real::operator-() const {
  Real r(bits());
  mpfr_neg(r.v_, v_, kRnd);
  return r;
}

Real& Real::operator+=(const Real& o) {
  widen_to(*this, o.bits());
  mpfr_add(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  widen_to(*this, o.bits());
  mpfr_sub(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  widen_to(*this, o.bits());
  mpfr_mul(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  widen_to(*this, o.bits());
  mpfr_div(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator+=(long o) {
  mpfr_add_si(v_, v_, o, kRnd);
  return *this;
}

Real& Real::operator-=(long o) {
  mpfr_sub_si(v_, v_, o, kRnd);
  return *this;
}

Real& Real::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, kRnd);
  return *this;
}

Real& Real::operator/=(long o) {
  mpfr_div_si(v_, v_, o, kRnd);
  return *this;
}

Real operator+(Real a, const Real& b) { return a += b; }
Real operator-(Real a, const Real& b) { return a -= b; }
Real operator*(Real a, const Real& b) { return a *= b; }
Real operator/(Real a, const Real& b) { return a /= b; }

Real operator-(long a, const Real& b) {
  Real r(b.bits());
  mpfr_si_sub(r.get(), a, b.get(), kRnd);
  return r;
}

Real operator/(long a, const Real& b) {
  Real r(b.bits());
  mpfr_si_div(r.get(), a, b.get(), kRnd);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

// ---------------------------------------------------------------------------
// Elementary functions

Real abs(const Real& x) { return unary(x, mpfr_abs); }

Real sqrt(const Real& x) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative number");
  return unary(x, mpfr_sqrt);
}

Real exp(const Real& x) { return unary(x, mpfr_exp); }

Real log(const Real& x) {
  if (x.sign() <= 0) throw DomainError("log of a non-positive number");
  return unary(x, mpfr_log);
}

Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real tan(const Real& x) { return unary(x, mpfr_tan); }
Real cot(const Real& x) { return unary(x, mpfr_cot); }
Real sinh(const Real& x) { return unary(x, mpfr_sinh); }
Real cosh(const Real& x) { return unary(x, mpfr_cosh); }
Real tanh(const Real& x) { return unary(x, mpfr_tanh); }
Real atan(const Real& x) { return unary(x, mpfr_atan); }

Real atanh(const Real& x) {
  if (!(abs(x) < 1)) throw DomainError("arctanh requires |x| < 1");
  return unary(x, mpfr_atanh);
}

Real acos(const Real& x) {
  if (abs(x) > 1) throw DomainError("arccos requires |x| <= 1");
  return unary(x, mpfr_acos);
}

Real acosh(const Real& x) {
  if (x < 1) throw DomainError("arccosh requires x >= 1");
  return unary(x, mpfr_acosh);
}

Real sqr(const Real& x) { return unary(x, mpfr_sqr); }

Real pow(const Real& x, long n) {
  Real r(x.bits());
  mpfr_pow_si(r.get(), x.get(), n, kRnd);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.bits());
  mpfr_mul_2si(r.get(), x.get(), e, kRnd);
  return r;
}

Real floor(const Real& x) { return unary(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t) { return mpfr_floor(r, a); }); }

Real min(const Real& a, const Real& b) { return a < b ? a : b; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

void sin_cos(const Real& x, Real& s, Real& c) {
  mpfr_set_prec(s.get(), x.bits());
  mpfr_set_prec(c.get(), x.bits());
  mpfr_sin_cos(s.get(), c.get(), x.get(), kRnd);
}

Real pow2(long e, long bits) {
  Real r(1L, bits);
  mpfr_mul_2si(r.get(), r.get(), e, kRnd);
  return r;
}

namespace {

struct ElementaryName {
  Elementary f;
  std::string_view name;
};

constexpr std::array<ElementaryName, 15> kElementaryNames{{
    {Elementary::kSqrt, "sqrt"},
    {Elementary::kExp, "exp"},
    {Elementary::kLog, "log"},
    {Elementary::kSin, "sin"},
    {Elementary::kCos, "cos"},
    {Elementary::kTan, "tan"},
    {Elementary::kSinh, "sinh"},
    {Elementary::kCosh, "cosh"},
    {Elementary::kTanh, "tanh"},
    {Elementary::kAtan, "arctan"},
    {Elementary::kAtanh, "arctanh"},
    {Elementary::kAcosh, "arccosh"},
    // aliases
    {Elementary::kAtan, "atan"},
    {Elementary::kAtanh, "atanh"},
    {Elementary::kAcosh, "acosh"},
}};

}  // namespace

std::string_view to_string(Elementary f) {
  for (const auto& e : kElementaryNames) {
    if (e.f == f) return e.name;
  }
  return "?";
}

Elementary parse_elementary(std::string_view name) {
  for (const auto& e : kElementaryNames) {
    if (e.name == name) return e.f;
  }
  throw ParseError("unknown elementary function '" + std::string(name) + "'");
}

Real eval_elementary(Elementary f, const Real& x_in, const PrecisionContext& ctx) {
  const Real x = x_in.at(ctx.bits());
  switch (f) {
    case Elementary::kSqrt: return sqrt(x);
    case Elementary::kExp: return exp(x);
    case Elementary::kLog: return log(x);
    case Elementary::kSin: return sin(x);
    case Elementary::kCos: return cos(x);
    case Elementary::kTan: return tan(x);
    case Elementary::kSinh: return sinh(x);
    case Elementary::kCosh: return cosh(x);
    case Elementary::kTanh: return tanh(x);
    case Elementary::kAtan: return atan(x);
    case Elementary::kAtanh: return atanh(x);
    case Elementary::kAcosh: return acosh(x);
  }
  throw DomainError("unknown elementary function");
}

double ulp_distance(const Real& a, const Real& b) {
  if (a == b) return 0.0;
  Real diff = abs(a.at(std::max(a.bits(), b.bits()) + 64) - b.at(std::max(a.bits(), b.bits()) + 64));
  if (b.is_zero()) return std::numeric_limits<double>::infinity();
  // ulp(b) = 2^(exp(b) - prec(b))
  mpfr_mul_2si(diff.get(), diff.get(), b.bits() - b.exponent(), kRnd);
  return diff.to_double();
}

// ---------------------------------------------------------------------------
// Complex

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator*=(const Real& o) {
  re *= o;
  im *= o;
  return *this;
}

// ---------------------------------------------------------------------------
// Rationals

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; }),
          s.end());
  if (s.empty()) throw ParseError("empty number");

  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const Rational num = parse_rational(s.substr(0, slash));
    const Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }

  // [sign] digits [. digits] [e|E [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw ParseError("malformed number '" + s + "'");
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw ParseError("malformed number '" + s + "'");
    ++i;
    const std::string exp_text = s.substr(i);
    if (exp_text.empty()) throw ParseError("malformed exponent in '" + s + "'");
    char* end = nullptr;
    exponent = std::strtol(exp_text.c_str(), &end, 10);
    if (end == nullptr || *end != '\0') throw ParseError("malformed exponent in '" + s + "'");
    if (exponent > 100000 || exponent < -100000) throw ParseError("exponent out of range in '" + s + "'");
  }
  mpz_class num(digits, 10);
  const long scale = exponent - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale >= 0 ? scale : -scale));
  Rational q = scale >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

long floor_to_long(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!f.fits_slong_p()) throw DomainError("integer part out of range");
  return f.get_si();
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace cyclespec
