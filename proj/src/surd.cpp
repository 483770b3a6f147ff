#include "brjuno/surd.hpp"

#include <map>
#include <stdexcept>

namespace brjuno {

namespace {

Integer gcd3(const Integer& x, const Integer& y, const Integer& z) {
  return gcd(gcd(x, y), z);
}

// floor(sqrt(n)) for n >= 0; boost's sqrt on mpz_int is the integer square root.
Integer isqrt(const Integer& n) { return sqrt(n); }

// sign of (k + b*sqrt(d)) with d >= 0 non-square unless b = 0.
int sign_int_plus_root(const Integer& k, const Integer& b, const Integer& d) {
  if (b == 0) return k.sign();
  if (k == 0) return b.sign();
  if (k > 0 && b > 0) return 1;
  if (k < 0 && b < 0) return -1;
  // Opposite signs: compare k^2 against b^2*d; the larger magnitude wins.
  Integer k2 = k * k, bd = b * b * d;
  if (k2 == bd) return 0;  // only possible when sqrt(d) is rational
  return (k2 > bd) ? k.sign() : b.sign();
}

}  // namespace

QuadraticSurd::QuadraticSurd(Integer a, Integer b, Integer c, Integer d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (c_ == 0) throw std::invalid_argument("surd: zero denominator");
  if (d_ < 0) throw std::invalid_argument("surd: negative radicand");
  normalize();
}

void QuadraticSurd::normalize() {
  if (d_ == 0) b_ = 0;
  if (b_ != 0) {
    // Fold perfect-square radicands into the rational part.
    Integer s = isqrt(d_);
    if (s * s == d_) {
      a_ += b_ * s;
      b_ = 0;
    }
  }
  if (b_ == 0) d_ = 0;
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  Integer g = gcd3(boost::multiprecision::abs(a_), boost::multiprecision::abs(b_), c_);
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

QuadraticSurd QuadraticSurd::from_rational(const Rational& r) {
  return QuadraticSurd(numerator(r), 0, denominator(r), 0);
}

Rational QuadraticSurd::as_rational() const {
  if (!is_rational()) throw std::logic_error("surd: not rational");
  return Rational(a_, c_);
}

int QuadraticSurd::sign() const { return sign_int_plus_root(a_, b_, d_); }

QuadraticSurd QuadraticSurd::operator-() const {
  return QuadraticSurd(-a_, -b_, c_, d_);
}

QuadraticSurd QuadraticSurd::add_integer(const Integer& n) const {
  return QuadraticSurd(a_ + n * c_, b_, c_, d_);
}

QuadraticSurd QuadraticSurd::mul_integer(const Integer& n) const {
  return QuadraticSurd(a_ * n, b_ * n, c_, d_);
}

QuadraticSurd QuadraticSurd::add_rational(const Rational& r) const {
  const Integer& u = numerator(r);
  const Integer& v = denominator(r);
  return QuadraticSurd(a_ * v + u * c_, b_ * v, c_ * v, d_);
}

QuadraticSurd QuadraticSurd::one_minus() const {
  return QuadraticSurd(c_ - a_, -b_, c_, d_);
}

QuadraticSurd QuadraticSurd::reciprocal() const {
  if (is_zero()) throw std::domain_error("surd: reciprocal of zero");
  if (b_ == 0) return QuadraticSurd(c_, 0, a_, 0);
  // c / (a + b*sqrt(d)) = c*(a - b*sqrt(d)) / (a^2 - b^2 d)
  Integer den = a_ * a_ - b_ * b_ * d_;
  return QuadraticSurd(c_ * a_, -c_ * b_, den, d_);
}

QuadraticSurd QuadraticSurd::abs() const { return sign() < 0 ? -*this : *this; }

Integer QuadraticSurd::floor() const {
  if (b_ == 0) {
    Integer q, r;
    divide_qr(a_, c_, q, r);  // truncating division; fix up toward -inf
    if (r != 0 && a_.sign() < 0) q -= 1;
    return q;
  }
  // Bracket a + b*sqrt(d) in a unit interval with integer endpoints, then
  // resolve the floor of the quotient exactly.
  Integer s = isqrt(b_ * b_ * d_);
  Integer low = (b_ > 0) ? Integer(a_ + s) : Integer(a_ - s - 1);  // low < x < low+2
  Integer q, r;
  divide_qr(low, c_, q, r);
  if (r != 0 && low.sign() < 0) q -= 1;
  // x >= q by construction; bump while x >= q+1.
  while (sign_int_plus_root(a_ - (q + 1) * c_, b_, d_) >= 0) q += 1;
  return q;
}

Integer QuadraticSurd::round_half_up() const {
  return QuadraticSurd(2 * a_ + c_, 2 * b_, 2 * c_, d_).floor();
}

QuadraticSurd QuadraticSurd::frac() const { return add_integer(-floor()); }

int QuadraticSurd::cmp_rational(const Rational& r) const {
  // x - u/v = ((a v - u c) + b v sqrt(d)) / (c v), and c v > 0.
  const Integer& u = numerator(r);
  const Integer& v = denominator(r);
  return sign_int_plus_root(a_ * v - u * c_, b_ * v, d_);
}

Real QuadraticSurd::to_real(mpfr_prec_t prec) const {
  if (b_ == 0) return Real::of(Rational(a_, c_), prec);
  mpfr_prec_t work = prec + 64;
  if (a_ == 0 || (a_.sign() == b_.sign())) {
    // No cancellation between a and b*sqrt(d).
    Real s = sqrt(Real::of(d_, work));
    Real num = Real::of(a_, work) + Real::of(b_, work) * s;
    return (num / Real::of(c_, work)).round_to(prec);
  }
  // a and b*sqrt(d) have opposite signs: rationalize so the subtraction
  // happens exactly in the integers.
  //   x = (a^2 - b^2 d) / (c * (a - b*sqrt(d)))
  Integer num = a_ * a_ - b_ * b_ * d_;
  Real s = sqrt(Real::of(d_, work));
  Real den = (Real::of(a_, work) - Real::of(b_, work) * s) * Real::of(c_, work);
  return (Real::of(num, work) / den).round_to(prec);
}

std::pair<std::vector<Integer>, std::vector<Integer>> surd_to_periodic_cf(
    const QuadraticSurd& x, int max_states) {
  if (x.is_rational())
    throw std::invalid_argument("surd_to_periodic_cf: rational input");
  std::vector<Integer> digits;
  digits.push_back(x.floor());
  QuadraticSurd alpha = x.frac();  // in (0,1), irrational
  std::map<std::tuple<Integer, Integer, Integer, Integer>, int> seen;
  std::vector<Integer> tail;
  for (int i = 0; i < max_states; ++i) {
    auto k = alpha.key();
    auto it = seen.find(k);
    if (it != seen.end()) {
      int start = it->second;
      std::vector<Integer> pre(digits.begin(), digits.begin() + 1 + start);
      std::vector<Integer> period(tail.begin() + start, tail.end());
      return {pre, period};
    }
    seen.emplace(k, i);
    QuadraticSurd inv = alpha.reciprocal();
    Integer digit = inv.floor();
    digits.push_back(digit);
    tail.push_back(digit);
    alpha = inv.frac();
  }
  throw std::runtime_error("surd_to_periodic_cf: no cycle within state budget");
}

}  // namespace brjuno
