#pragma once

#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "brjuno/alpha.hpp"

namespace brjuno {

// Degree cap for period-q root finding: P^{oq} - id has degree 2^q.
inline constexpr int kQCap = 12;

struct PeriodicPoint {
  std::complex<double> z{0.0, 0.0};
  int exact_period = 1;
  // derivative of P^{o exact_period} at z, i.e. prod (lambda + 2 z_i) along
  // the orbit.
  std::complex<double> multiplier{0.0, 0.0};
};

struct CycleSet {
  std::vector<PeriodicPoint> points;
  std::string label;  // "X(q)" for exact-period-q sets, "C(p/q)" for explosions
  double d = std::numeric_limits<double>::infinity();  // min |z| over points
  // Pairs of retained points closer than the dedup resolution; genuine root
  // clusters (near-parabolic parameters) are kept distinct, never merged.
  int near_collisions = 0;
};

// For each q = 1..q_max, every nonzero periodic point of P(z) = lambda z + z^2
// with exact period q (lambda = e^{2 i pi alpha}). Roots of P^{oq}(z) - z are
// found by simultaneous (Aberth) iteration with the polynomial evaluated
// through the composed map, Newton-polished, then classified by their minimal
// returning divisor. z = 0 is excluded from every set.
std::vector<CycleSet> periodic_points(const AlphaSpec& alpha, int q_max,
                                      int q_cap = kQCap);

struct DistanceRow {
  int n = 0;
  Integer q{1};  // convergent denominator q_n
  double d = 0;  // distance from 0 to the nonzero periodic points of period <= q_n
};

struct DistanceSequence {
  std::vector<DistanceRow> rows;
  // True when the requested range was cut short (a q_n exceeded the degree cap
  // or the digit stream ran out); rows hold the computable prefix.
  bool truncated = false;
};

DistanceSequence distance_sequence(const AlphaSpec& alpha, int n_max,
                                   int q_cap = kQCap);

// The q-cycle of P_alpha that collapses onto the origin as alpha -> p/q.
// Seeded at the q-th roots of (1 - e^{2 i pi q eps})/A (eps = alpha - p/q,
// A the parabolic coefficient of p/q), Newton-refined on P^{oq}(z) - z, and
// validated as a single orbit. alpha = p/q exactly returns the degenerate
// set {0}. Requires |alpha - p/q| < 1/q^3.
CycleSet explosion_cycle(const Rational& pq, const AlphaSpec& alpha);

struct ZEpsilonCheck {
  double lhs = 0;  // log|z_eps| + beta'_{n0-1} log(1/alpha'_{n0})
  double rhs = 0;  // log L_a(p/q) + log(2 pi)/q
  double gap = 0;  // |lhs - rhs|, expected O(eps^{1/q})
};

// Compares the measured size of the explosion cycle at alpha = p/q + eps with
// the asymptotic prediction; n0 is the index where p/q appears among the
// convergents of p/q + eps (which side depends on the sign of eps).
ZEpsilonCheck z_epsilon_check(const Rational& pq, double eps);

// max over the samples of |R_eps(w)| where
//   Q^{oq}(w) = w + 2 i pi q eps w (1 - w^q) + eps R_eps(w),
// Q(w) = P_{p/q+eps}(z_eps w)/z_eps rescaled by the marked cycle point z_eps.
double rescaled_map_residual(const Rational& pq, double eps,
                             const std::vector<std::complex<double>>& w_samples);

}  // namespace brjuno
