#pragma once

#include "brjuno/cf.hpp"

namespace brjuno {

enum class BrjunoFlavor { gauss, nearest_integer, truncated_rational };

struct BrjunoValue {
  double value = 0;            // nats
  int terms_used = -1;         // last summand index n
  double tail_bound = 0;       // certified (or conventional, see below) tail
  BrjunoFlavor flavor = BrjunoFlavor::gauss;
  bool divergence_suspected = false;
};

// Partial sum Phi_n = sum_{k=0}^{n} beta_{k-1} log(1/alpha_k).
// Throws std::out_of_range if the expansion is shallower than n, and
// RationalInput if some alpha_k with k <= n is zero (use phi_trunc then).
double phi_partial(const CFExpansion& exp, int n);

// Full Brjuno sum with certified stopping.
//
// Tail control after the deepest summand n:
//   * input digits certified eventually periodic: the rigorous bound
//     4 beta_n log(M+1) (Gauss) / 2 beta_n log(M+1/2) (nearest-integer),
//     M the largest future partial quotient;
//   * digits exhausted (decimal / finite-prefix inputs): the conventional
//     majorant sum_{k>n} C log(F_{k+1})/F_{k+1} with C = 2 (fibonacci_tail).
//     No finite bound exists for arbitrary continuations — a continuation can
//     even diverge — so this is a stopping convention, not a theorem, and it
//     is reported in tail_bound rather than silently trusted.
//
// Partial sums above `ceiling` nats mark the input numerically non-Brjuno:
// the returned value has divergence_suspected = true and an infinite
// tail_bound. Throws RationalInput for exactly rational inputs and
// PrecisionExhausted when the input's digits run out before tail <= tol.
BrjunoValue phi(const AlphaSpec& x, double tol,
                mpfr_prec_t prec = kDefaultPrec, double ceiling = 1e4);

// Nearest-integer flavor of phi; same tail and error contract.
BrjunoValue phi_tilde(const AlphaSpec& x, double tol,
                      mpfr_prec_t prec = kDefaultPrec, double ceiling = 1e4);

// Finite Brjuno sum of a rational: sum_{n=0}^{m-1} beta_{n-1} log(1/alpha_n)
// where m is the termination index. Both finite expansions of r give the
// same number (the variant's extra alpha = 1 contributes log 1 = 0); this is
// evaluated over the canonical one and cross-checked in tests.
double phi_trunc(const Rational& r, mpfr_prec_t prec = kDefaultPrec);

BrjunoValue phi_trunc_value(const Rational& r, mpfr_prec_t prec = kDefaultPrec);

// sum_{k>=n} C log(F_{k+1})/F_{k+1}, summed until terms vanish in double.
// Requires n >= 3.
double fibonacci_tail(int n, double C);

// fibonacci_tail extended below n = 3: indices k < 3 contribute the
// uniform worst case C/e >= C log(t)/t per term.
double unknown_tail_majorant(int n, double C);

}  // namespace brjuno
