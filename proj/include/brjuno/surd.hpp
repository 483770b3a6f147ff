#pragma once

#include <tuple>
#include <utility>
#include <vector>

#include "brjuno/real.hpp"

namespace brjuno {

// Exact arithmetic over real quadratic surds (a + b*sqrt(d)) / c with integer
// a, b, c and a fixed non-square radicand d >= 0. This is the exactness
// backbone for periodic continued fractions: the Gauss and nearest-integer
// maps stay inside one Q(sqrt(d)), so digits, alphas and betas never touch
// floating point until the final rounding.
//
// Normal form: c > 0, gcd(a, b, c) = 1, and b = 0 forces d = 0 (rationals are
// representable so mixed chains need no special cases).
class QuadraticSurd {
 public:
  QuadraticSurd() : a_(0), b_(0), c_(1), d_(0) {}
  QuadraticSurd(Integer a, Integer b, Integer c, Integer d);

  static QuadraticSurd from_rational(const Rational& r);
  // (a0 + b0*sqrt(d)) / c0 where sqrt(d) is irrational (d non-square required).
  static QuadraticSurd make(const Integer& a, const Integer& b, const Integer& c,
                            const Integer& d) {
    return QuadraticSurd(a, b, c, d);
  }

  bool is_rational() const { return b_ == 0; }
  Rational as_rational() const;  // requires is_rational()

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }
  const Integer& d() const { return d_; }

  int sign() const;
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadraticSurd operator-() const;
  QuadraticSurd add_integer(const Integer& n) const;
  QuadraticSurd mul_integer(const Integer& n) const;
  QuadraticSurd add_rational(const Rational& r) const;
  QuadraticSurd one_minus() const;  // 1 - x, exact
  QuadraticSurd reciprocal() const; // requires !is_zero()
  QuadraticSurd abs() const;

  Integer floor() const;
  Integer round_half_up() const;  // floor(x + 1/2)
  QuadraticSurd frac() const;     // x - floor(x)

  // sign of (x - r), exact
  int cmp_rational(const Rational& r) const;

  // Cancellation-safe evaluation: a single rounding to `prec` bits, so the
  // relative error is <= 2^-prec even when a and b*sqrt(d) nearly cancel.
  Real to_real(mpfr_prec_t prec) const;

  // State key for cycle detection along Gauss/nearest-integer orbits.
  std::tuple<Integer, Integer, Integer, Integer> key() const {
    return {a_, b_, c_, d_};
  }
  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) {
    return x.key() == y.key();
  }

 private:
  void normalize();
  Integer a_, b_, c_, d_;
};

// Continued-fraction digits of a surd: runs the Gauss map until the state
// repeats (Lagrange guarantees it does) and returns (preperiod, period) with
// preperiod[0] = a_0 = floor(x). Throws std::runtime_error past `max_states`.
std::pair<std::vector<Integer>, std::vector<Integer>> surd_to_periodic_cf(
    const QuadraticSurd& x, int max_states = 100000);

}  // namespace brjuno
