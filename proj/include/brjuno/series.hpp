#pragma once

#include <vector>

#include "brjuno/alpha.hpp"

namespace brjuno {

// Truncated power series c_1 z + c_2 z^2 + ... + c_N z^N (no constant term:
// everything here is a germ fixing 0). coeff(k) is the coefficient of z^k.
// All arithmetic truncates past degree N exactly.
struct TruncatedSeries {
  std::vector<Complex> c;  // c[i] is the coefficient of z^{i+1}
  mpfr_prec_t precision_bits = kDefaultPrec;

  int order() const { return static_cast<int>(c.size()); }
  const Complex& coeff(int k) const { return c.at(static_cast<size_t>(k) - 1); }
};

TruncatedSeries series_zero(int N, mpfr_prec_t prec = kDefaultPrec);
TruncatedSeries series_identity(int N, mpfr_prec_t prec = kDefaultPrec);

TruncatedSeries series_add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries series_scale(const TruncatedSeries& f, const Complex& s);
// Truncated product; orders must match.
TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g);

// Taylor coefficients of f(g(z)) through degree N (g has no constant term by
// construction). Horner over the series ring; orders must match.
TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g);

// Jet of z -> lambda z + z^2 at order N >= 2.
TruncatedSeries quadratic_jet(const Complex& multiplier, int N);
// Same with lambda = e^{2 i pi alpha}, the angle reduced mod 1 exactly first.
TruncatedSeries quadratic_jet(const Rational& alpha, int N,
                              mpfr_prec_t prec = kDefaultPrec);

struct ParabolicData {
  Rational pq;
  Complex A;       // coefficient of z^{q+1} in the q-fold self-composition
  Real la;         // |1/(qA)|^{1/q}
  Real residual;   // max |coeff of z^2..z^q|, must vanish up to round-off
  int jet_order;   // q + 2
};

// Composes the jet of z -> e^{2 i pi p/q} z + z^2 with itself q times at
// order q+2, verifies the fixed point has multiplicity q+1 (residual), and
// extracts the leading parabolic coefficient A plus the asymptotic size
// |1/(qA)|^{1/q}. Supports q <= 200. Working precision escalates
// geometrically (up to 16x the requested bits) until the residual clears an
// absolute 1e-10; only then does it throw PrecisionExhausted.
ParabolicData parabolic_coefficient(const Rational& pq,
                                    mpfr_prec_t prec = kDefaultPrec);

}  // namespace brjuno
