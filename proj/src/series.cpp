#include "brjuno/series.hpp"

#include <stdexcept>
#include <string>

namespace brjuno {

namespace {

void require_same_order(const TruncatedSeries& f, const TruncatedSeries& g,
                        const char* what) {
  if (f.order() != g.order()) {
    throw std::invalid_argument(std::string(what) + ": order mismatch " +
                                std::to_string(f.order()) + " vs " +
                                std::to_string(g.order()));
  }
}

}  // namespace

TruncatedSeries series_zero(int N, mpfr_prec_t prec) {
  if (N < 1) throw std::invalid_argument("series: order must be >= 1");
  TruncatedSeries s;
  s.precision_bits = prec;
  s.c.assign(static_cast<size_t>(N), Complex(prec));
  return s;
}

TruncatedSeries series_identity(int N, mpfr_prec_t prec) {
  TruncatedSeries s = series_zero(N, prec);
  s.c[0] = Complex(Real::of(1L, prec), Real::zero(prec));
  return s;
}

TruncatedSeries series_add(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same_order(f, g, "series_add");
  TruncatedSeries out = f;
  for (int i = 0; i < f.order(); ++i) out.c[i] = f.c[i] + g.c[i];
  return out;
}

TruncatedSeries series_scale(const TruncatedSeries& f, const Complex& s) {
  TruncatedSeries out = f;
  for (auto& ci : out.c) ci = ci * s;
  return out;
}

TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same_order(f, g, "series_mul");
  const int N = f.order();
  TruncatedSeries out = series_zero(N, std::max(f.precision_bits, g.precision_bits));
  // degree d = (i+1) + (j+1) <= N
  for (int i = 0; i + 2 <= N; ++i) {
    for (int j = 0; (i + 1) + (j + 1) <= N; ++j) {
      int d = i + j + 2;
      out.c[d - 1] = out.c[d - 1] + f.c[i] * g.c[j];
    }
  }
  return out;
}

TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same_order(f, g, "compose");
  const int N = f.order();
  const mpfr_prec_t p = std::max(f.precision_bits, g.precision_bits);
  // Horner: f(w) = w (c_1 + w (c_2 + ... + w c_N)). The inner values have a
  // constant part, carried separately since TruncatedSeries stores none.
  Complex cst = f.coeff(N);
  TruncatedSeries ser = series_zero(N, p);
  for (int k = N - 1; k >= 1; --k) {
    ser = series_add(series_scale(g, cst), series_mul(g, ser));
    cst = f.coeff(k);
  }
  return series_add(series_scale(g, cst), series_mul(g, ser));
}

TruncatedSeries quadratic_jet(const Complex& multiplier, int N) {
  if (N < 2) throw std::invalid_argument("quadratic_jet: order must be >= 2");
  TruncatedSeries s = series_zero(N, multiplier.prec());
  s.c[0] = multiplier;
  s.c[1] = Complex(Real::of(1L, multiplier.prec()), Real::zero(multiplier.prec()));
  return s;
}

TruncatedSeries quadratic_jet(const Rational& alpha, int N, mpfr_prec_t prec) {
  Rational t = alpha - Rational(floor_rational(alpha));
  return quadratic_jet(Complex::unit(Real::of(t, prec)), N);
}

ParabolicData parabolic_coefficient(const Rational& pq, mpfr_prec_t prec) {
  const Integer q_big = denominator(pq);
  if (q_big < 1 || q_big > 200) {
    throw std::domain_error("parabolic_coefficient: denominator must be in [1, 200]");
  }
  const int q = q_big.convert_to<int>();
  const int N = q + 2;

  // The z^2..z^q coefficients vanish identically, so anything left is
  // roundoff scaled by the largest intermediate coefficient (which grows
  // fast with q). Escalate precision until the leftovers drop below an
  // absolute 1e-10; a genuine multiplicity failure would sit at the scale
  // of A itself and never pass.
  for (int attempt = 0; attempt < 5; ++attempt) {
    const mpfr_prec_t p = prec << attempt;
    TruncatedSeries jet = quadratic_jet(pq, N, p);
    const Complex lambda = jet.c[0];

    // q-fold self-composition, using P(w) = lambda w + w^2 directly:
    // h <- lambda h + h^2 costs one truncated square per step.
    TruncatedSeries h = jet;
    for (int step = 1; step < q; ++step) {
      h = series_add(series_scale(h, lambda), series_mul(h, h));
    }

    Complex A = h.coeff(q + 1);
    Real a_abs = A.abs();

    Real residual = Real::zero(p);
    for (int k = 2; k <= q; ++k) residual = max(residual, h.coeff(k).abs());

    if (residual > Real::of(1e-10, p)) {
      if (attempt < 4) continue;
      throw PrecisionExhausted(
          "parabolic_coefficient: multiplicity check failed for " +
              numerator(pq).str() + "/" + denominator(pq).str() +
              " (residual " + residual.str(3) + ")",
          std::nan(""), -1, residual.to_double());
    }
    if (a_abs.to_double() < 1e-30) {
      throw std::runtime_error(
          "parabolic_coefficient: leading coefficient vanished (internal error)");
    }

    ParabolicData out;
    out.pq = pq;
    out.A = A;
    // |1/(qA)|^{1/q} = exp(-(log q + log |A|)/q)
    out.la = exp(-(log(Real::of(static_cast<long>(q), p)) + log(a_abs)) /
                 Real::of(static_cast<long>(q), p));
    out.residual = residual;
    out.jet_order = N;
    return out;
  }
  throw std::logic_error("parabolic_coefficient: unreachable");
}

}  // namespace brjuno
