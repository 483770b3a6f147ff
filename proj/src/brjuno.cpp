#include "brjuno/brjuno.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace brjuno {

namespace {

constexpr int kDepthCap = 1 << 20;

// One summand beta_{n-1} log(1/alpha_n) at the expansion's precision.
Real summand(const CFExpansion& e, int n) {
  const Real& alpha = e.alphas[static_cast<size_t>(n)];
  if (alpha.sign() <= 0) {
    throw RationalInput(
        "brjuno sum: alpha_" + std::to_string(n) +
        " vanishes (rational input) — the truncated sum phi_trunc applies");
  }
  return e.beta(n - 1) * (-log(alpha));
}

// Rigorous tail after the deepest summand, when the future digits are
// certified bounded by M; otherwise the documented Fibonacci convention.
double tail_after(const CFExpansion& e, double C_unknown) {
  const int n = e.depth();
  if (n < 0) return unknown_tail_majorant(0, C_unknown);
  if (e.future_digit_bound.has_value()) {
    Real beta_n = e.betas.back();
    double m = Real::of(*e.future_digit_bound, 64).to_double();
    if (e.flavor == CFFlavor::gauss) {
      // sum_{k>n} beta_{k-1} <= 4 beta_n  (beta halves every two steps),
      // log(1/alpha_k) <= log(a_{k+1} + 1) <= log(M + 1)
      return 4.0 * beta_n.to_double() * std::log(m + 1.0);
    }
    // nearest-integer: beta halves every step, alpha >= 1/(a + 1/2)
    return 2.0 * beta_n.to_double() * std::log(m + 0.5);
  }
  return unknown_tail_majorant(n + 1, C_unknown);
}

BrjunoValue phi_impl(const AlphaSpec& x, double tol, CFFlavor flavor,
                     mpfr_prec_t prec, double ceiling) {
  if (tol <= 0) throw std::invalid_argument("phi: tol must be positive");
  Kernel k = resolve_kernel(x);
  if (kernel_is_rational(k)) {
    throw RationalInput("phi: input is rational; its Brjuno sum diverges "
                        "(use phi_trunc for the truncated value)");
  }

  const BrjunoFlavor out_flavor = flavor == CFFlavor::gauss
                                      ? BrjunoFlavor::gauss
                                      : BrjunoFlavor::nearest_integer;
  int depth = 48;
  for (;;) {
    CFExpansion e = flavor == CFFlavor::gauss ? expand_gauss(x, depth, prec)
                                              : expand_nearest(x, depth, prec);
    CompensatedSum sum(prec + 16);
    for (int n = 0; n <= e.depth(); ++n) {
      sum.add(summand(e, n));
      if (sum.value().to_double() > ceiling) {
        BrjunoValue v;
        v.value = sum.value().to_double();
        v.terms_used = n;
        v.tail_bound = std::numeric_limits<double>::infinity();
        v.flavor = out_flavor;
        v.divergence_suspected = true;
        return v;
      }
    }
    double partial = e.depth() >= 0 ? sum.value().to_double()
                                    : std::numeric_limits<double>::quiet_NaN();
    double tail = tail_after(e, 2.0);
    if (tail <= tol) {
      BrjunoValue v;
      v.value = partial;
      v.terms_used = e.depth();
      v.tail_bound = tail;
      v.flavor = out_flavor;
      return v;
    }
    if (e.status == ExpandStatus::digits_exhausted) {
      throw PrecisionExhausted(
          "phi: input digits exhausted at depth " + std::to_string(e.depth()) +
              " with tail majorant " + std::to_string(tail) + " > tol",
          partial, e.depth(), tail);
    }
    if (depth >= kDepthCap) {
      throw PrecisionExhausted("phi: depth cap reached before tail <= tol",
                               partial, e.depth(), tail);
    }
    depth *= 2;
  }
}

}  // namespace

double phi_partial(const CFExpansion& exp, int n) {
  if (n < 0 || n > exp.depth()) {
    throw std::out_of_range("phi_partial: index " + std::to_string(n) +
                            " outside expansion of depth " +
                            std::to_string(exp.depth()));
  }
  CompensatedSum sum(exp.precision_bits + 16);
  for (int k = 0; k <= n; ++k) sum.add(summand(exp, k));
  return sum.value().to_double();
}

BrjunoValue phi(const AlphaSpec& x, double tol, mpfr_prec_t prec,
                double ceiling) {
  return phi_impl(x, tol, CFFlavor::gauss, prec, ceiling);
}

BrjunoValue phi_tilde(const AlphaSpec& x, double tol, mpfr_prec_t prec,
                      double ceiling) {
  return phi_impl(x, tol, CFFlavor::nearest_integer, prec, ceiling);
}

BrjunoValue phi_trunc_value(const Rational& r, mpfr_prec_t prec) {
  CFExpansion e = expand_gauss(AlphaSpec::rational_of(r), kDepthCap, prec);
  // terminated with alpha_m = 0: sum the m terms before it
  CompensatedSum sum(prec + 16);
  for (int n = 0; n < *e.m; ++n) sum.add(summand(e, n));
  BrjunoValue v;
  v.value = sum.value().to_double();
  v.terms_used = *e.m - 1;
  v.tail_bound = 0;
  v.flavor = BrjunoFlavor::truncated_rational;
  return v;
}

double phi_trunc(const Rational& r, mpfr_prec_t prec) {
  return phi_trunc_value(r, prec).value;
}

double fibonacci_tail(int n, double C) {
  if (n < 3) throw std::invalid_argument("fibonacci_tail: n must be >= 3");
  if (C <= 0) throw std::invalid_argument("fibonacci_tail: C must be positive");
  // F_{k+1} for k = n, n+1, ...
  Integer fk = fibonacci(n);       // F_n
  Integer fk1 = fibonacci(n + 1);  // F_{n+1}
  double sum = 0, comp = 0;
  for (;;) {
    double f = Real::of(fk1, 64).to_double();
    if (!std::isfinite(f)) break;  // F overflowed double: term is 0 anyway
    double term = C * std::log(f) / f;
    if (term < 1e-320) break;
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    Integer next = fk + fk1;
    fk = fk1;
    fk1 = next;
  }
  return sum;
}

double unknown_tail_majorant(int n, double C) {
  if (n >= 3) return fibonacci_tail(n, C);
  int below = 3 - std::max(n, 0);
  return below * (C / std::exp(1.0)) + fibonacci_tail(3, C);
}

}  // namespace brjuno
