#include "brjuno/linearization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "brjuno/errors.hpp"

namespace brjuno {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// frac(n * alpha) in [0,1), exact for rational and surd kernels. Interval
// kernels are certified: lo and hi must land in the same integer cell, else
// the reduced angle is not determined by the input's precision.
Real certified_frac_mul(const Kernel& k, const Integer& n, mpfr_prec_t prec) {
  if (const auto* iv = std::get_if<RatInterval>(&k)) {
    Rational u = iv->lo * n;
    Rational v = iv->hi * n;
    Integer fu = floor_rational(u);
    if (fu != floor_rational(v))
      throw PrecisionExhausted("angle reduction: " + n.str() +
                               "*alpha mod 1 straddles an integer at the "
                               "input's precision");
    return Real::of((u + v) / 2 - fu, prec);
  }
  return kernel_frac_mul(k, n, prec);
}

}  // namespace

Complex small_divisor(const AlphaSpec& alpha, long n, mpfr_prec_t prec) {
  if (n < 2) throw std::invalid_argument("small_divisor: n must be >= 2");
  Kernel k = resolve_kernel(alpha);
  Real t = certified_frac_mul(k, Integer(n - 1), prec);
  Complex lambda = Complex::unit(kernel_frac_mul(k, Integer(1), prec));
  // lambda^n - lambda = lambda (e^{2 i pi t} - 1); the parenthesis is
  // -2 sin^2(pi t) + 2 i sin(pi t) cos(pi t), which never subtracts nearly
  // equal quantities, so tiny results keep full relative accuracy.
  Real pit = Real::pi(prec + 8) * t;
  Real s = sin(pit);
  Real c = cos(pit);
  Complex unit_m1(-(s * s) * 2L, (s * c) * 2L);
  return lambda * unit_m1;
}

LinearizingSeries linearize(const AlphaSpec& alpha, int N, mpfr_prec_t prec,
                            double quad_coeff) {
  if (N < 2) throw std::invalid_argument("linearize: N must be >= 2");
  if (!(quad_coeff > 0))
    throw std::invalid_argument("linearize: quad_coeff must be positive");
  Kernel k = resolve_kernel(alpha);
  if (kernel_is_rational(k))
    throw RationalInput(
        "linearize: alpha is rational, the multiplier is a root of unity and "
        "no linearization exists");

  LinearizingSeries out;
  out.alpha = alpha;
  out.N = N;
  out.precision_bits = prec;
  out.quad_coeff = quad_coeff;
  out.log_mag.assign(static_cast<std::size_t>(N) + 1, 0.0);
  out.phase.assign(static_cast<std::size_t>(N) + 1,
                   std::complex<double>(1.0, 0.0));

  Real a_frac = kernel_frac_mul(k, Integer(1), prec);
  const double a_d = a_frac.to_double();
  out.lambda = Complex::unit(a_frac).to_std();

  const double log_B = std::log(quad_coeff);
  const Real pi_hi = Real::pi(prec + 8);
  double floor_mag = kInf;

  for (int n = 2; n <= N; ++n) {
    // Convolution sum_{i+j=n} h_i h_j in scaled doubles: pull out the largest
    // pairwise magnitude so every addend has modulus <= 1. |h_n| itself grows
    // like r^{-n} and would overflow double long before N = 4096.
    double M = -kInf;
    for (int i = 1; i < n; ++i)
      M = std::max(M, out.log_mag[i] + out.log_mag[n - i]);
    std::complex<double> S(0.0, 0.0);
    for (int i = 1; i < n; ++i)
      S += std::exp(out.log_mag[i] + out.log_mag[n - i] - M) *
           (out.phase[i] * out.phase[n - i]);
    double abs_S = std::abs(S);
    if (!(abs_S > 0))
      throw std::runtime_error(
          "linearize: convolution cancelled to zero at order " +
          std::to_string(n));

    // Divisor lambda^n - lambda: magnitude 2 sin(pi t) from the exact reduced
    // angle t = (n-1) alpha mod 1; unit phase e^{i(2 pi a + pi t + pi/2)}.
    Real t = certified_frac_mul(k, Integer(n - 1), prec);
    Real mag = sin(pi_hi * t) * 2L;
    double log_d = log(mag).to_double();
    double theta = 2 * kPi * a_d + kPi * t.to_double() + kPi / 2;
    std::complex<double> d_phase = std::polar(1.0, theta);

    out.log_mag[n] = M + std::log(abs_S) + log_B - log_d;
    std::complex<double> ph = (S / abs_S) * std::conj(d_phase);
    out.phase[n] = ph / std::abs(ph);
    floor_mag = std::min(floor_mag, mag.to_double());
  }
  out.small_divisor_floor = floor_mag;
  return out;
}

RadiusEstimate conformal_radius(const LinearizingSeries& s, RadiusMethod m) {
  if (s.N < 64)
    throw std::invalid_argument(
        "conformal_radius: need N >= 64 for a stable trailing window");
  const int lo = std::max(2, s.N / 2);
  const int cnt = s.N - lo + 1;

  // Hadamard: limsup of log|h_n|/n, read off the trailing window.
  double hmax = -kInf;
  for (int n = lo; n <= s.N; ++n)
    hmax = std::max(hmax, s.log_mag[n] / n);
  const double r_hadamard = std::exp(-hmax);

  // Least-squares slope of log|h_n| against n over the same window
  // (mean-centered for numerical stability).
  double xbar = 0, ybar = 0;
  for (int n = lo; n <= s.N; ++n) {
    xbar += n;
    ybar += s.log_mag[n];
  }
  xbar /= cnt;
  ybar /= cnt;
  double sxx = 0, sxy = 0;
  for (int n = lo; n <= s.N; ++n) {
    const double dx = n - xbar;
    sxx += dx * dx;
    sxy += dx * (s.log_mag[n] - ybar);
  }
  const double r_slope = std::exp(-sxy / sxx);

  RadiusEstimate est;
  est.method = m;
  est.value = (m == RadiusMethod::hadamard) ? r_hadamard : r_slope;
  est.spread = std::abs(r_hadamard - r_slope);
  est.N_used = s.N;
  return est;
}

RadiusEstimate conformal_radius(const AlphaSpec& alpha, int N, RadiusMethod m,
                                mpfr_prec_t prec) {
  return conformal_radius(linearize(alpha, N, prec), m);
}

std::complex<double> evaluate_h(const LinearizingSeries& s,
                                std::complex<double> w) {
  const double log_w = std::log(std::abs(w));
  const double arg_w = std::arg(w);
  std::complex<double> acc(0.0, 0.0);
  for (int n = 1; n <= s.N; ++n) {
    const double e = s.log_mag[n] + n * log_w;
    if (e < -745) continue;  // below double underflow, term is exactly lost
    acc += std::exp(e) * s.phase[n] * std::polar(1.0, n * arg_w);
  }
  return acc;
}

double linearization_residual(const LinearizingSeries& s, double w_abs,
                              int samples) {
  if (samples < 1) throw std::invalid_argument("linearization_residual: samples < 1");
  double worst = 0;
  for (int j = 0; j < samples; ++j) {
    // Offset keeps the samples away from the axes, which are atypically
    // symmetric for real quadratic data.
    const std::complex<double> w =
        std::polar(w_abs, 2 * kPi * (j + 0.37) / samples);
    const std::complex<double> hw = evaluate_h(s, w);
    const std::complex<double> lhs =
        s.lambda * hw + s.quad_coeff * hw * hw;
    const std::complex<double> rhs = evaluate_h(s, s.lambda * w);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace brjuno
