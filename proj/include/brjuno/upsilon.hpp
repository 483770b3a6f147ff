#pragma once

#include <string>
#include <utility>
#include <vector>

#include "brjuno/brjuno.hpp"
#include "brjuno/dynamics.hpp"
#include "brjuno/linearization.hpp"

namespace brjuno {

// Resource limits for a single upsilon evaluation.
struct Budget {
  int series_N = 4096;       // linearization truncation order
  double tol = 1e-8;         // phi tail target
  int n_max = 64;            // deepest convergent index for sequence routes
  mpfr_prec_t precision_bits = kDefaultPrec;
  int q_cap = kQCap;         // periodic-point degree cap (2^q roots)
  double ceiling = 1e4;      // phi partial sums above this flag divergence
};

enum class UpsilonMethod {
  rational_formula,
  brjuno_series,
  cremer_sequence,
  failed,
};

// Stable text tags, used verbatim in CSV output.
std::string method_name(UpsilonMethod m);

struct UpsilonDiagnostics {
  // brjuno_series route
  int series_N = 0;
  double phi_value = 0;
  double phi_tail = 0;
  double radius = 0;
  double radius_spread = 0;
  // cremer_sequence route: the computed prefix of (n, Phi_n + log d_n)
  std::vector<std::pair<int, double>> sequence;
  bool truncated = false;
  // why a fallback or partial label happened; empty for clean runs
  std::string note;
};

struct UpsilonValue {
  double value = 0;  // nats
  UpsilonMethod method = UpsilonMethod::failed;
  double error_estimate = 0;
  UpsilonDiagnostics diagnostics;
};

// Upsilon at a rational: Phi_trunc(p/q) + log L(p/q) + log(2 pi)/q, all three
// pieces exact or certified. error_estimate carries the parabolic residual.
UpsilonValue upsilon_rational(const Rational& pq,
                              mpfr_prec_t prec = kDefaultPrec);

// Upsilon on the series route: Phi(alpha) + log r(alpha) with r from the
// slope fit, error = phi tail bound plus the log-scale gap between the two
// radius estimators. With flavor = nearest_integer the sum uses phi_tilde
// instead (the variant plotted over surd grids). Throws what phi/linearize
// throw (RationalInput, PrecisionExhausted) and domain_error if phi flags
// divergence.
UpsilonValue upsilon_brjuno(const AlphaSpec& x, const Budget& b = {},
                            BrjunoFlavor flavor = BrjunoFlavor::gauss);

// The sequence (n, Phi_n + log d_n) whose limit is upsilon at non-Brjuno
// irrationals; d_n is the distance from 0 to the periodic points of period
// <= q_n, standing in for the conformal radius of the complement (the two
// are asymptotically equivalent; the substitution is visible here and in
// diagnostics). The prefix stops where q_n passes q_cap or the input's
// digits run out.
struct CremerSequence {
  std::vector<std::pair<int, double>> terms;
  bool truncated = false;
};
CremerSequence cremer_sequence(const AlphaSpec& x, int n_max,
                               int q_cap = kQCap,
                               mpfr_prec_t prec = kDefaultPrec);

// Total dispatch. Rational inputs use the finite formula; irrationals whose
// phi certifies under the budget use the series route; inputs whose partial
// sums pass the ceiling (numerically non-Brjuno -- an advisory label, never
// a mathematical claim) and inputs whose digits run out before the tail
// certifies fall to the cremer sequence, with the reason recorded in
// diagnostics.note. On that route the value is the LAST sequence element:
// an upper bound for the limit up to error_estimate (the sequence is
// essentially decreasing, so the bound is one-sided; the limit may sit far
// below, even at -infinity for true non-Brjuno inputs). Only when no route
// produces a single term does the result come back method = failed with a
// NaN value and infinite error.
UpsilonValue upsilon(const AlphaSpec& x, const Budget& b = {});

// Rows for the continuity experiments: upsilon along an approach sequence,
// with deltas against the target's upsilon. Rows keep the input order.
struct ProbeRow {
  AlphaSpec alpha;
  UpsilonValue value;
  double delta = 0;  // |value.value - target.value|
};
struct ProbeResult {
  UpsilonValue target;
  std::vector<ProbeRow> rows;
};
ProbeResult continuity_probe(const AlphaSpec& target,
                             const std::vector<AlphaSpec>& approach,
                             const Budget& b = {});

// [0; cf(pq), k, 1, 1, ...] for each k in ks: irrational approach sequence
// to the rational pq, a large digit k followed by a golden tail. Requires
// 0 <= pq < 1 and every k >= 1.
std::vector<AlphaSpec> approach_sequence(const Rational& pq,
                                         const std::vector<long>& ks);

// The continued fraction of 1 - x from that of x in (0, 1), via
// 1 - [0; a1, a2, ...] = [0; 1, a1 - 1, a2, ...] when a1 >= 2 and its
// inverse [0; a2 + 1, a3, ...] when a1 = 1. Works on rational, periodic_cf,
// and digits specs; decimal literals are rejected (write the mirrored
// literal instead).
AlphaSpec mirror_spec(const AlphaSpec& x);

}  // namespace brjuno
