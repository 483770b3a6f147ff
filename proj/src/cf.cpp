#include "brjuno/cf.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace brjuno {

namespace {

// floor over the open interval (A, B), B > A: the digit floor(x) is the same
// for every x in (A, B) iff floor at the infimum equals floor just below the
// supremum. Returns nullopt when the interval spans an integer.
std::optional<Integer> open_interval_floor(const Rational& A, const Rational& B) {
  Integer fa = floor_rational(A);
  Integer fb;
  if (denominator(B) == 1) {
    fb = numerator(B) - 1;  // B itself is excluded
  } else {
    fb = floor_rational(B);
  }
  if (fa == fb) return fa;
  return std::nullopt;
}

std::optional<Integer> open_interval_round_half_up(const Rational& A,
                                                   const Rational& B) {
  // round_half_up(x) = floor(x + 1/2)
  Rational half(1, 2);
  return open_interval_floor(A + half, B + half);
}

struct Bookkeeping {
  CFExpansion e;
  Integer p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
  Integer p_cur, q_cur;

  void push_digit(const Integer& digit, int sign_prev_or_zero, bool nearest) {
    if (e.a.empty()) {
      p_cur = digit;
      q_cur = 1;
    } else {
      Integer carry = nearest ? Integer(sign_prev_or_zero) : Integer(1);
      Integer p_next = digit * p_cur + carry * p_prev;
      Integer q_next = digit * q_cur + carry * q_prev;
      p_prev = p_cur;
      q_prev = q_cur;
      p_cur = p_next;
      q_cur = q_next;
    }
    e.a.push_back(digit);
    e.convergents.emplace_back(p_cur, q_cur);
  }
};

Real beta_from_kernel(const Kernel& k, const Integer& p, const Integer& q,
                      mpfr_prec_t prec) {
  if (const auto* r = std::get_if<Rational>(&k)) {
    Rational v = *r * Rational(q) - Rational(p);
    return Real::of(abs(v), prec);
  }
  if (const auto* s = std::get_if<QuadraticSurd>(&k)) {
    QuadraticSurd v = s->mul_integer(q).add_integer(-p);
    return v.abs().to_real(prec);
  }
  const auto& iv = std::get<RatInterval>(k);
  Rational v = iv.mid() * Rational(q) - Rational(p);
  return Real::of(abs(v), prec);
}

// ---------------------------------------------------------------------------
// Exact kernels (rational / quadratic surd).
//
// The state is alpha_n itself; digits come from exact floor / round-half-up.
// Surd states of an eventually periodic expansion revisit themselves, which
// gives a certified bound on every future partial quotient.
// ---------------------------------------------------------------------------

struct ExactState {
  bool is_surd = false;
  Rational r;
  QuadraticSurd s;

  bool is_zero() const { return is_surd ? s.is_zero() : (r == 0); }

  std::string key() const {
    if (is_surd) {
      return "S" + s.a().str() + "," + s.b().str() + "," + s.c().str() + "," +
             s.d().str();
    }
    return "R" + numerator(r).str() + "/" + denominator(r).str();
  }

  Real eval(mpfr_prec_t prec) const {
    if (is_surd) return s.to_real(prec);
    return Real::of(r, prec);
  }
};

ExactState exact_initial(const Kernel& k) {
  ExactState st;
  if (const auto* r = std::get_if<Rational>(&k)) {
    st.r = *r;
  } else {
    st.is_surd = true;
    st.s = std::get<QuadraticSurd>(k);
  }
  return st;
}

// floor(st) and st - floor(st)
std::pair<Integer, ExactState> exact_floor_split(const ExactState& st) {
  ExactState next = st;
  Integer fl;
  if (st.is_surd) {
    fl = st.s.floor();
    next.s = st.s.add_integer(-fl);
  } else {
    fl = floor_rational(st.r);
    next.r = st.r - Rational(fl);
  }
  return {fl, next};
}

ExactState exact_reciprocal(const ExactState& st) {
  ExactState next = st;
  if (st.is_surd) {
    next.s = st.s.reciprocal();
  } else {
    next.r = Rational(1) / st.r;
  }
  return next;
}

// round_half_up(st), sign(st - round), |st - round|
std::tuple<Integer, int, ExactState> exact_round_split(const ExactState& st) {
  ExactState next = st;
  Integer rd;
  int sign;
  if (st.is_surd) {
    rd = st.s.round_half_up();
    QuadraticSurd diff = st.s.add_integer(-rd);
    sign = diff.sign();
    next.s = diff.abs();
  } else {
    rd = floor_rational(st.r + Rational(1, 2));
    Rational diff = st.r - Rational(rd);
    sign = diff == 0 ? 0 : (diff > 0 ? 1 : -1);
    next.r = abs(diff);
  }
  return {rd, sign, next};
}

CFExpansion expand_exact(const Kernel& kernel, CFFlavor flavor, int max_terms,
                         mpfr_prec_t prec) {
  const bool nearest = flavor == CFFlavor::nearest_integer;
  Bookkeeping bk;
  bk.e.flavor = flavor;
  bk.e.precision_bits = prec;

  ExactState st = exact_initial(kernel);

  // Digit 0.
  Integer a0;
  int s0 = 0;
  if (nearest) {
    auto [rd, sign, next] = exact_round_split(st);
    a0 = rd;
    s0 = sign;
    st = next;
  } else {
    auto [fl, next] = exact_floor_split(st);
    a0 = fl;
    st = next;
  }
  bk.push_digit(a0, 0, nearest);
  if (nearest) bk.e.s.push_back(s0);
  bk.e.alphas.push_back(st.eval(prec));
  bk.e.betas.push_back(beta_from_kernel(kernel, bk.p_cur, bk.q_cur, prec));

  std::map<std::string, int> seen;  // surd state -> index of its alpha
  auto note_state = [&](int n) {
    if (!st.is_surd || bk.e.future_digit_bound.has_value()) return;
    auto [it, fresh] = seen.emplace(st.key(), n);
    if (fresh) return;
    // alpha_j == alpha_i with i = it->second, j = n: digits a_{i+1}..a_j
    // repeat forever, so every future quotient lies in that window.
    Integer bound = 0;
    for (int k = it->second + 1; k <= n; ++k) {
      if (bk.e.a[static_cast<size_t>(k)] > bound) bound = bk.e.a[static_cast<size_t>(k)];
    }
    bk.e.future_digit_bound = bound;
  };
  note_state(0);

  int n = 0;
  while (!st.is_zero() && n < max_terms) {
    ++n;
    ExactState inv = exact_reciprocal(st);
    Integer digit;
    int sign = 0;
    if (nearest) {
      auto [rd, sg, next] = exact_round_split(inv);
      digit = rd;
      sign = sg;
      st = next;
    } else {
      auto [fl, next] = exact_floor_split(inv);
      digit = fl;
      st = next;
    }
    int sign_prev = nearest ? bk.e.s.back() : 0;
    bk.push_digit(digit, sign_prev, nearest);
    if (nearest) bk.e.s.push_back(sign);
    bk.e.alphas.push_back(st.eval(prec));
    bk.e.betas.push_back(beta_from_kernel(kernel, bk.p_cur, bk.q_cur, prec));
    note_state(n);
  }

  if (st.is_zero()) {
    bk.e.status = ExpandStatus::terminated;
    bk.e.terminated = true;
    bk.e.m = n;
  } else {
    bk.e.status = ExpandStatus::max_terms;
  }
  return bk.e;
}

// ---------------------------------------------------------------------------
// Interval kernels (decimal literals, finite digit prefixes).
//
// The state is an open rational interval certainly containing alpha_n. A
// digit is emitted only when floor (resp. round) is constant on the whole
// interval; otherwise the expansion stops with digits_exhausted.
// ---------------------------------------------------------------------------

CFExpansion expand_interval(const RatInterval& input, const Kernel& kernel,
                            CFFlavor flavor, int max_terms, mpfr_prec_t prec) {
  const bool nearest = flavor == CFFlavor::nearest_integer;
  Bookkeeping bk;
  bk.e.flavor = flavor;
  bk.e.precision_bits = prec;
  bk.e.status = ExpandStatus::digits_exhausted;

  Rational lo = input.lo, hi = input.hi;

  auto push = [&](const Integer& digit, int sign, int sign_prev) {
    bk.push_digit(digit, sign_prev, nearest);
    if (nearest) bk.e.s.push_back(sign);
    Rational mid = (lo + hi) / 2;
    bk.e.alphas.push_back(Real::of(mid, prec));
    bk.e.betas.push_back(beta_from_kernel(kernel, bk.p_cur, bk.q_cur, prec));
  };

  // Digit 0 straight from the input interval.
  if (nearest) {
    auto rd = open_interval_round_half_up(lo, hi);
    if (!rd) return bk.e;
    Rational u = lo - Rational(*rd), v = hi - Rational(*rd);
    int sign;
    if (u >= 0) {
      sign = 1;
    } else if (v <= 0) {
      sign = -1;
      std::swap(u, v);
      u = -u;
      v = -v;
    } else {
      return bk.e;  // |alpha_0| straddles 0: sign not certifiable
    }
    lo = u;
    hi = v;
    push(*rd, sign, 0);
  } else {
    auto fl = open_interval_floor(lo, hi);
    if (!fl) return bk.e;
    lo -= Rational(*fl);
    hi -= Rational(*fl);
    push(*fl, 0, 0);
  }

  for (int n = 1; n <= max_terms; ++n) {
    if (lo <= 0) break;  // 1/alpha unbounded over the interval
    Rational A = Rational(1) / hi, B = Rational(1) / lo;
    if (nearest) {
      auto rd = open_interval_round_half_up(A, B);
      if (!rd) break;
      Rational u = A - Rational(*rd), v = B - Rational(*rd);
      int sign;
      if (u >= 0) {
        sign = 1;
      } else if (v <= 0) {
        sign = -1;
        Rational t = -u;
        u = -v;
        v = t;
      } else {
        break;
      }
      int sign_prev = bk.e.s.back();
      lo = u;
      hi = v;
      push(*rd, sign, sign_prev);
    } else {
      auto fl = open_interval_floor(A, B);
      if (!fl) break;
      lo = A - Rational(*fl);
      hi = B - Rational(*fl);
      push(*fl, 0, 0);
    }
  }

  if (bk.e.depth() == max_terms) bk.e.status = ExpandStatus::max_terms;
  return bk.e;
}

CFExpansion expand(const AlphaSpec& x, CFFlavor flavor, int max_terms,
                   mpfr_prec_t prec) {
  if (max_terms < 0) throw std::invalid_argument("expand: max_terms must be >= 0");
  Kernel k = resolve_kernel(x);
  if (const auto* iv = std::get_if<RatInterval>(&k)) {
    return expand_interval(*iv, k, flavor, max_terms, prec);
  }
  return expand_exact(k, flavor, max_terms, prec);
}

// Gauss expansion synthesized from an explicit finite digit list (used for
// the non-canonical variant of a rational). The alpha-chain is evaluated
// backward exactly: alpha_M = 0, alpha_n = 1/(a_{n+1} + alpha_{n+1}).
CFExpansion expansion_from_digits(const std::vector<Integer>& digits,
                                  mpfr_prec_t prec) {
  const int M = static_cast<int>(digits.size()) - 1;
  std::vector<Rational> alpha(static_cast<size_t>(M) + 1);
  alpha[static_cast<size_t>(M)] = 0;
  for (int n = M - 1; n >= 0; --n) {
    alpha[static_cast<size_t>(n)] =
        Rational(1) / (Rational(digits[static_cast<size_t>(n) + 1]) +
                       alpha[static_cast<size_t>(n) + 1]);
  }
  Rational x = Rational(digits[0]) + alpha[0];
  Kernel k = x;

  Bookkeeping bk;
  bk.e.flavor = CFFlavor::gauss;
  bk.e.precision_bits = prec;
  for (int n = 0; n <= M; ++n) {
    bk.push_digit(digits[static_cast<size_t>(n)], 0, false);
    bk.e.alphas.push_back(Real::of(alpha[static_cast<size_t>(n)], prec));
    bk.e.betas.push_back(beta_from_kernel(k, bk.p_cur, bk.q_cur, prec));
  }
  bk.e.status = ExpandStatus::terminated;
  bk.e.terminated = true;
  bk.e.m = M;
  return bk.e;
}

}  // namespace

Real CFExpansion::beta(int n) const {
  if (n == -1) return Real::of(1L, precision_bits);
  if (n < -1 || n >= static_cast<int>(betas.size())) {
    throw std::out_of_range("CFExpansion::beta: index " + std::to_string(n));
  }
  return betas[static_cast<size_t>(n)];
}

CFExpansion expand_gauss(const AlphaSpec& x, int max_terms, mpfr_prec_t prec) {
  return expand(x, CFFlavor::gauss, max_terms, prec);
}

CFExpansion expand_nearest(const AlphaSpec& x, int max_terms, mpfr_prec_t prec) {
  return expand(x, CFFlavor::nearest_integer, max_terms, prec);
}

std::pair<CFExpansion, CFExpansion> rational_expansions(const Rational& r,
                                                        mpfr_prec_t prec) {
  AlphaSpec spec = AlphaSpec::rational_of(r);
  // Euclid terminates in O(log q) digits; the cap is never the binding stop.
  CFExpansion canonical = expand_gauss(spec, 1 << 20, prec);

  // Canonical Euclid never ends in a_m = 1 for m >= 1 (that would force
  // alpha_{m-1} = 1), so decrementing the last digit always leaves it >= 1.
  std::vector<Integer> variant = canonical.a;
  variant.back() -= 1;
  variant.push_back(1);
  return {std::move(canonical), expansion_from_digits(variant, prec)};
}

TailData convergent_tail_data(const CFExpansion& e, int n) {
  if (n < 0 || n >= static_cast<int>(e.a.size())) {
    throw std::out_of_range("convergent_tail_data: index " + std::to_string(n) +
                            " outside expansion of depth " +
                            std::to_string(e.depth()));
  }
  TailData t;
  t.p = e.convergents[static_cast<size_t>(n)].first;
  t.q = e.convergents[static_cast<size_t>(n)].second;
  t.beta = e.betas[static_cast<size_t>(n)];
  t.alpha = e.alphas[static_cast<size_t>(n)];
  return t;
}

Integer fibonacci(int n) {
  if (n < -1) throw std::invalid_argument("fibonacci: n must be >= -1");
  Integer a = 0, b = 1;  // F_{-1}, F_0
  for (int k = 0; k < n; ++k) {
    Integer c = a + b;
    a = b;
    b = c;
  }
  return n == -1 ? a : b;
}

}  // namespace brjuno
