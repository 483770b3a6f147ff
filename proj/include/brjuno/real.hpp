#pragma once

#include <mpfr.h>

#include <algorithm>
#include <boost/multiprecision/gmp.hpp>
#include <complex>
#include <string>
#include <utility>

namespace brjuno {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline constexpr mpfr_prec_t kDefaultPrec = 128;

// Arbitrary-precision real with explicit per-value precision and
// round-to-nearest throughout. Binary operations allocate the result at the
// wider operand's precision; nothing here escalates precision implicitly.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = kDefaultPrec) {
    mpfr_init2(v_, prec);
    mpfr_set_nan(v_);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    mpfr_init2(o.v_, MPFR_PREC_MIN);  // leave the source destructible
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of(double x, mpfr_prec_t prec = kDefaultPrec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of(long x, mpfr_prec_t prec = kDefaultPrec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of(const Integer& x, mpfr_prec_t prec = kDefaultPrec) {
    Real r(prec);
    mpfr_set_z(r.v_, x.backend().data(), MPFR_RNDN);
    return r;
  }
  static Real of(const Rational& x, mpfr_prec_t prec = kDefaultPrec) {
    Real r(prec);
    mpfr_set_q(r.v_, x.backend().data(), MPFR_RNDN);
    return r;
  }
  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static Real zero(mpfr_prec_t prec) { return of(0L, prec); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  // Round this value to a (usually smaller) precision. Used to finish
  // compute-wide-then-round-once pipelines.
  Real round_to(mpfr_prec_t prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  Integer floor() const {
    Integer z;
    mpfr_get_z(z.backend().data(), v_, MPFR_RNDD);
    return z;
  }

  std::string str(int digits = 20) const {
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string out = s ? s : "nan";
    if (s) mpfr_free_str(s);
    return out + "e" + std::to_string(e);
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, long b) {
    Real r(a.prec());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, long b) { return a + (-b); }
  friend Real operator*(const Real& a, long b) {
    Real r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, long b) {
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

  friend Real abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real sqrt(const Real& a) {
    Real r(a.prec());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real log(const Real& a) {
    Real r(a.prec());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real exp(const Real& a) {
    Real r(a.prec());
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real sin(const Real& a) {
    Real r(a.prec());
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real cos(const Real& a) {
    Real r(a.prec());
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real hypot(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }

 private:
  mpfr_t v_;
};

// Minimal complex-over-Real. Division uses the textbook formula, which is fine
// for the exponent ranges this library actually visits (MPFR has huge exponent
// range, so no premature over/underflow to dodge).
struct Complex {
  Real re, im;

  explicit Complex(mpfr_prec_t prec = kDefaultPrec)
      : re(Real::zero(prec)), im(Real::zero(prec)) {}
  Complex(Real re_, Real im_) : re(std::move(re_)), im(std::move(im_)) {}

  static Complex of(std::complex<double> z, mpfr_prec_t prec = kDefaultPrec) {
    return Complex(Real::of(z.real(), prec), Real::of(z.imag(), prec));
  }
  // e^{2*pi*i*t} with t given directly (caller reduces t mod 1 exactly).
  static Complex unit(const Real& t) {
    Real angle = Real::pi(t.prec() + 8) * t * 2L;
    return Complex(cos(angle), sin(angle));
  }

  mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
  std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Complex operator*(const Complex& a, const Real& s) {
    return Complex(a.re * s, a.im * s);
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return Complex((a.re * b.re + a.im * b.im) / d,
                   (a.im * b.re - a.re * b.im) / d);
  }
  friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }

  Complex conj() const { return Complex(re, -im); }
  Real norm2() const { return re * re + im * im; }
  Real abs() const { return hypot(re, im); }
};

// Compensated (Kahan) accumulator at fixed precision; keeps the summation
// error independent of the number of terms.
class CompensatedSum {
 public:
  explicit CompensatedSum(mpfr_prec_t prec)
      : s_(Real::zero(prec)), c_(Real::zero(prec)) {}
  void add(const Real& x) {
    Real y = x - c_;
    Real t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  const Real& value() const { return s_; }

 private:
  Real s_, c_;
};

}  // namespace brjuno
