#pragma once

#include <string>
#include <variant>
#include <vector>

#include "brjuno/errors.hpp"
#include "brjuno/real.hpp"
#include "brjuno/surd.hpp"

namespace brjuno {

// How a real number enters the library. Raw binary floats are deliberately
// not accepted: a float is a rational and its continued fraction terminates
// spuriously, which is exactly the wrong topology for Brjuno-type quantities.
struct AlphaSpec {
  enum class Kind { rational, periodic_cf, decimal, digits };

  Kind kind = Kind::rational;

  // kind == rational
  Rational rat{0};

  // kind == periodic_cf: digits preperiod[0]=a_0 (any integer), then
  // preperiod[1..] >= 1, then period repeating forever (all >= 1, non-empty).
  std::vector<Integer> preperiod, period;

  // kind == decimal: exact value of `literal` known to +/- 2^-precision_bits.
  std::string literal;
  unsigned precision_bits = 0;

  // kind == digits: finite digit list [a_0; a_1, ...]; terminal means the
  // number IS this finite continued fraction (a rational); otherwise unknown
  // digits follow.
  std::vector<Integer> digit_list;
  bool terminal = false;

  static AlphaSpec rational_of(const Rational& r);
  static AlphaSpec rational_of(long p, long q) { return rational_of(Rational(p, q)); }
  static AlphaSpec periodic(std::vector<Integer> preperiod,
                            std::vector<Integer> period);
  static AlphaSpec decimal(std::string literal, unsigned precision_bits);
  static AlphaSpec finite_digits(std::vector<Integer> digits, bool terminal);
  static AlphaSpec golden();  // [0; 1,1,1,...]

  // Canonical text form, parseable by parse_alpha.
  std::string text() const;
};

// Text grammar (also the CLI's input format):
//   p/q            rational, e.g. "3/7", "-1/2"; a bare integer means n/1
//   cf:[a0;a1,...]         finite digit list, terminal
//   cf:[a0;a1,...,...]     trailing "..." marks it non-terminal
//   pcf:[a0;p1,p2|q1,q2]   preperiod a0,p1,p2 then period q1,q2 repeating
//   dec:LITERAL@BITS       decimal literal certified to +/- 2^-BITS, BITS >= 64
// Throws ParseError with the offending byte position.
AlphaSpec parse_alpha(const std::string& text);

// --- Exact kernel -----------------------------------------------------------
// Every AlphaSpec resolves to one of three exact carriers: a rational, a
// quadratic surd, or a rational interval (open) for inputs with uncertainty.

struct RatInterval {
  Rational lo, hi;  // lo < hi; the value lies strictly between
  Rational mid() const { return (lo + hi) / 2; }
};

using Kernel = std::variant<Rational, QuadraticSurd, RatInterval>;

Kernel resolve_kernel(const AlphaSpec& x);

bool kernel_is_rational(const Kernel& k);
// Exact rational value; requires kernel_is_rational.
Rational kernel_rational(const Kernel& k);
// Value (interval midpoint for RatInterval), one rounding at the end.
Real kernel_to_real(const Kernel& k, mpfr_prec_t prec);
// frac(n * x) in [0,1); exact for rational/surd kernels, midpoint otherwise.
Real kernel_frac_mul(const Kernel& k, const Integer& n, mpfr_prec_t prec);
// x - r evaluated to prec (exact arithmetic first).
Real kernel_sub_rational(const Kernel& k, const Rational& r, mpfr_prec_t prec);
// sign of (x - r); for intervals, 0 means "straddles" (uncertifiable).
int kernel_cmp_rational(const Kernel& k, const Rational& r);

// floor of an exact rational (toward -infinity).
Integer floor_rational(const Rational& r);

}  // namespace brjuno
