#pragma once

#include <complex>
#include <vector>

#include "brjuno/alpha.hpp"

namespace brjuno {

// Power series h(w) = w + sum_{n>=2} h_n w^n conjugating z -> lambda z + B z^2
// to the rotation w -> lambda w, in magnitude-safe form: h_n is stored as
// log|h_n| plus a unit phase, because |h_n| ~ r^{-n} overflows any fixed
// floating format long before interesting N.
struct LinearizingSeries {
  AlphaSpec alpha;
  int N = 0;
  // index n holds data for h_n, valid for n in [1, N]; log_mag[1] = 0.
  std::vector<double> log_mag;
  std::vector<std::complex<double>> phase;
  double small_divisor_floor = 0;  // min |lambda^n - lambda| over n = 2..N
  mpfr_prec_t precision_bits = kDefaultPrec;
  std::complex<double> lambda;     // multiplier, double image
  double quad_coeff = 1.0;         // B
};

// lambda^n - lambda with lambda = e^{2 i pi alpha}, computed from
// t = (n-1)alpha mod 1 reduced exactly (rational/surd kernels) or with a
// certified floor check (interval kernels; throws PrecisionExhausted when the
// reduced angle straddles an integer at the input's precision). The value is
// assembled as lambda (e^{2 i pi t} - 1) with e^{2 i pi t} - 1 expanded as
// -2 sin^2(pi t) + 2 i sin(pi t) cos(pi t), so no cancellation ever happens
// and tiny divisors keep full relative accuracy. Rational alpha is allowed
// and yields exact zeros at roots of unity. Requires n >= 2.
Complex small_divisor(const AlphaSpec& alpha, long n,
                      mpfr_prec_t prec = kDefaultPrec);

// Coefficients of the linearizing series through order N from the recurrence
// h_n = B (sum_{i+j=n, i,j>=1} h_i h_j) / (lambda^n - lambda), h_1 = 1.
// Convolutions run in scaled double precision (safe against exponent
// overflow); divisors come from the exact angle reduction above.
// Throws RationalInput for rational alpha and std::invalid_argument for
// N < 2 or quad_coeff <= 0.
LinearizingSeries linearize(const AlphaSpec& alpha, int N,
                            mpfr_prec_t prec = kDefaultPrec,
                            double quad_coeff = 1.0);

enum class RadiusMethod { hadamard, slope_fit };

struct RadiusEstimate {
  double value = 0;
  RadiusMethod method = RadiusMethod::slope_fit;
  double spread = 0;  // |hadamard - slope_fit|, always computed
  int N_used = 0;
};

// Radius of convergence of h, i.e. the conformal radius of the Siegel disk.
// hadamard: exp(-max log|h_n|/n) over the trailing window [N/2, N];
// slope_fit: exp(-s) with s the least-squares slope of log|h_n| on the same
// window. Requires N >= 64.
RadiusEstimate conformal_radius(const LinearizingSeries& s, RadiusMethod m);
RadiusEstimate conformal_radius(const AlphaSpec& alpha, int N, RadiusMethod m,
                                mpfr_prec_t prec = kDefaultPrec);

// h(w) summed termwise in exponent space; |w| must stay under the radius for
// this to mean anything. Used by residual checks.
std::complex<double> evaluate_h(const LinearizingSeries& s,
                                std::complex<double> w);

// max_k |P(h(w_k)) - h(lambda w_k)| over `samples` points with |w_k| = w_abs.
double linearization_residual(const LinearizingSeries& s, double w_abs,
                              int samples = 16);

}  // namespace brjuno
