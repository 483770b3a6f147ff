#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "brjuno/alpha.hpp"

namespace brjuno {

enum class CFFlavor { gauss, nearest_integer };

enum class ExpandStatus {
  terminated,        // hit alpha_m = 0 exactly (rational input)
  max_terms,         // emitted the requested number of digits
  digits_exhausted,  // next digit not certifiable from the input's information
};

// One continued-fraction expansion snapshot. Immutable after construction.
//
// Gauss flavor:  a_{n+1} = floor(1/alpha_n), alpha_{n+1} = {1/alpha_n}.
// Nearest-integer flavor: alpha~_0 = d(x, Z), alpha~_{n+1} = d(1/alpha~_n, Z);
// quotients a_n >= 2 for n >= 1 with signs s_n = sign(1/alpha_{n-1} - a_n)
// (s_0 = sign(x - a_0)); the signed convergent recurrence is
// p_n = a_n p_{n-1} + s_{n-1} p_{n-2}.
//
// betas[n] is beta_n = alpha_0 * ... * alpha_n, computed as |q_n x - p_n| in
// exact arithmetic and rounded once (these agree for both flavors).
// beta_{-1} = 1 is implicit. For the variant expansion of a rational (see
// rational_expansions) alphas may contain a 1 just before termination.
struct CFExpansion {
  CFFlavor flavor = CFFlavor::gauss;
  std::vector<Integer> a;
  std::vector<int> s;  // nearest_integer only; empty for gauss
  std::vector<Real> alphas;
  std::vector<Real> betas;
  std::vector<std::pair<Integer, Integer>> convergents;
  ExpandStatus status = ExpandStatus::max_terms;
  bool terminated = false;
  std::optional<int> m;  // index with alpha_m = 0, when terminated
  mpfr_prec_t precision_bits = kDefaultPrec;

  // Largest partial quotient that can occur at any index > depth(), when the
  // input's digit stream is certified eventually periodic (quadratic surds
  // once the state cycle has closed). Drives rigorous Brjuno tail bounds.
  std::optional<Integer> future_digit_bound;

  int depth() const { return static_cast<int>(a.size()) - 1; }
  // beta_n with n = -1 allowed (returns 1 at the expansion's precision).
  Real beta(int n) const;
};

CFExpansion expand_gauss(const AlphaSpec& x, int max_terms,
                         mpfr_prec_t prec = kDefaultPrec);
CFExpansion expand_nearest(const AlphaSpec& x, int max_terms,
                           mpfr_prec_t prec = kDefaultPrec);

// The two finite Gauss expansions of a rational: the Euclid one ending with
// alpha_m = 0, and the variant [a_0; ..., a_m - 1, 1] whose alpha-chain passes
// through 1 before terminating.
std::pair<CFExpansion, CFExpansion> rational_expansions(
    const Rational& r, mpfr_prec_t prec = kDefaultPrec);

struct TailData {
  Integer p, q;
  Real beta, alpha;
};

// Consistent (p_n, q_n, beta_n, alpha_n) snapshot; throws std::out_of_range.
TailData convergent_tail_data(const CFExpansion& e, int n);

// F_{-1} = 0, F_0 = 1, F_{n+1} = F_n + F_{n-1}.
Integer fibonacci(int n);

}  // namespace brjuno
