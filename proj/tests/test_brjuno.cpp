#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "brjuno/brjuno.hpp"
#include "doctest.h"

using namespace brjuno;

namespace {

// closed forms used as oracles, evaluated in wide precision
double golden_phi() {
  Real g = (sqrt(Real::of(5L, 256)) - Real::of(1L, 256)) / Real::of(2L, 256);
  return (-log(g) / (Real::of(1L, 256) - g)).to_double();
}

double sqrt2m1_phi() {
  Real x = sqrt(Real::of(2L, 256)) - Real::of(1L, 256);
  return (-log(x) / (Real::of(1L, 256) - x)).to_double();
}

double golden_phi_tilde() {
  // alpha~_n == g^2 for every n: geometric sum log(1/g^2)/(1 - g^2)
  Real g = (sqrt(Real::of(5L, 256)) - Real::of(1L, 256)) / Real::of(2L, 256);
  Real g2 = g * g;
  return (-log(g2) / (Real::of(1L, 256) - g2)).to_double();
}

AlphaSpec spec_of_surd(const QuadraticSurd& s) {
  auto [pre, period] = surd_to_periodic_cf(s);
  return AlphaSpec::periodic(std::move(pre), std::move(period));
}

}  // namespace

TEST_CASE("partial sums match hand-computed forms") {
  CFExpansion eg = expand_gauss(AlphaSpec::golden(), 8);
  double g = (std::sqrt(5.0) - 1) / 2;
  double lg = std::log(1 / g);

  CHECK(phi_partial(eg, 0) == doctest::Approx(lg).epsilon(1e-12));
  CHECK(phi_partial(eg, 2) ==
        doctest::Approx(lg * (1 + g + g * g)).epsilon(1e-12));

  AlphaSpec s2 = AlphaSpec::periodic({Integer(0)}, {Integer(2)});
  CFExpansion e2 = expand_gauss(s2, 8);
  double x = std::sqrt(2.0) - 1;
  CHECK(phi_partial(e2, 1) ==
        doctest::Approx(std::log(1 / x) * (1 + x)).epsilon(1e-12));

  // monotone in n
  double prev = 0;
  for (int n = 0; n <= 8; ++n) {
    double v = phi_partial(eg, n);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(phi_partial(eg, 9), std::out_of_range);

  // rational expansion: the zero alpha is refused and phi_trunc suggested
  CFExpansion er = expand_gauss(AlphaSpec::rational_of(1, 2), 8);
  CHECK_THROWS_AS(phi_partial(er, 1), RationalInput);
}

TEST_CASE("phi of the golden mean hits the geometric closed form") {
  BrjunoValue v = phi(AlphaSpec::golden(), 1e-12);
  CHECK(v.flavor == BrjunoFlavor::gauss);
  CHECK_FALSE(v.divergence_suspected);
  CHECK(v.tail_bound <= 1e-12);
  CHECK(std::abs(v.value - golden_phi()) <= v.tail_bound + 1e-12);
  CHECK(v.terms_used > 20);

  // partial sums below, full value above
  CFExpansion e = expand_gauss(AlphaSpec::golden(), 10);
  CHECK(phi_partial(e, 10) <= v.value + 1e-12);
}

TEST_CASE("phi of sqrt(2)-1") {
  AlphaSpec s = AlphaSpec::periodic({Integer(0)}, {Integer(2)});
  BrjunoValue v = phi(s, 1e-12);
  CHECK(std::abs(v.value - sqrt2m1_phi()) <= v.tail_bound + 1e-12);
}

TEST_CASE("phi tolerance contract") {
  AlphaSpec s = AlphaSpec::periodic({Integer(0), Integer(3)},
                                    {Integer(1), Integer(2), Integer(7)});
  BrjunoValue coarse = phi(s, 1e-6);
  BrjunoValue fine = phi(s, 1e-10);
  CHECK(coarse.tail_bound <= 1e-6);
  CHECK(fine.tail_bound <= 1e-10);
  CHECK(std::abs(coarse.value - fine.value) <= 1e-6);
  // partial sums sit below the limit value
  CHECK(coarse.value <= fine.value + 1e-12);
}

TEST_CASE("phi refuses rationals") {
  CHECK_THROWS_AS(phi(AlphaSpec::rational_of(3, 7), 1e-8), RationalInput);
  CHECK_THROWS_AS(phi(parse_alpha("cf:[0;1,2,3]"), 1e-8), RationalInput);
  CHECK_THROWS_AS(phi_tilde(AlphaSpec::rational_of(1, 3), 1e-8), RationalInput);
}

TEST_CASE("phi on certified decimals: success and honest exhaustion") {
  // 59 digits of sqrt(2)-1, certified to 192 bits: plenty for tol 1e-4
  AlphaSpec d = parse_alpha(
      "dec:0.41421356237309504880168872420969807856967187537694807317667@192");
  BrjunoValue v = phi(d, 1e-4);
  CHECK(std::abs(v.value - sqrt2m1_phi()) <= v.tail_bound + 1e-10);

  // a short literal runs out of certified digits before tol 1e-8
  AlphaSpec shallow = parse_alpha("dec:0.3@64");
  try {
    phi(shallow, 1e-8);
    FAIL("expected PrecisionExhausted");
  } catch (const PrecisionExhausted& ex) {
    CHECK(ex.depth >= 0);
    CHECK(ex.majorant > 1e-8);
    CHECK(std::isfinite(ex.partial));
    CHECK(ex.partial > 0);
  }
}

TEST_CASE("huge partial quotients trip the divergence flag") {
  std::vector<Integer> digits = {Integer(0), pow(Integer(10), 5000), Integer(2)};
  AlphaSpec wild = AlphaSpec::finite_digits(digits, /*terminal=*/false);
  BrjunoValue v = phi(wild, 1e-8);
  CHECK(v.divergence_suspected);
  CHECK(v.value > 1e4);
  CHECK(std::isinf(v.tail_bound));
  CHECK(v.terms_used == 0);  // the very first summand is ~5000 log 10
}

TEST_CASE("phi_trunc closed forms") {
  CHECK(phi_trunc(Rational(0)) == 0.0);
  CHECK(phi_trunc(Rational(5)) == 0.0);
  CHECK(phi_trunc(Rational(1, 2)) == doctest::Approx(std::log(2)).epsilon(1e-14));
  double want37 = std::log(7.0 / 3.0) + (3.0 / 7.0) * std::log(3.0);
  CHECK(phi_trunc(Rational(3, 7)) == doctest::Approx(want37).epsilon(1e-14));

  BrjunoValue bv = phi_trunc_value(Rational(3, 7));
  CHECK(bv.flavor == BrjunoFlavor::truncated_rational);
  CHECK(bv.tail_bound == 0.0);
  CHECK(bv.terms_used == 1);  // summands n = 0, 1
}

TEST_CASE("phi_trunc agrees across both finite expansions") {
  auto check_pair = [](const Rational& r) {
    auto [can, var] = rational_expansions(r);
    double v_can = *can.m == 0 ? 0.0 : phi_partial(can, *can.m - 1);
    double v_var = phi_partial(var, *var.m - 1);
    double scale = std::max({1.0, std::abs(v_can), std::abs(v_var)});
    CHECK(std::abs(v_can - v_var) <= 1e-14 * scale);
    CHECK(phi_trunc(r) == doctest::Approx(v_can).epsilon(1e-14));
  };

  for (long q = 1; q <= 120; ++q) {
    for (long p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      check_pair(Rational(p, q));
    }
  }
  std::mt19937 rng(20260818);
  std::uniform_int_distribution<long> qd(2, 1000);
  for (int t = 0; t < 1500; ++t) {
    long q = qd(rng);
    long p = std::uniform_int_distribution<long>(1, q - 1)(rng);
    if (std::gcd(p, q) != 1) continue;
    check_pair(Rational(p, q));
  }
}

TEST_CASE("phi_tilde closed forms at the two fixed points") {
  BrjunoValue vg = phi_tilde(AlphaSpec::golden(), 1e-11);
  CHECK(vg.flavor == BrjunoFlavor::nearest_integer);
  CHECK(std::abs(vg.value - golden_phi_tilde()) <= vg.tail_bound + 1e-11);

  // sqrt(2)-1 is a nearest-integer fixed point: d(1/x, Z) = x with digit 2.
  // Its tilde-sum is the same geometric form as its Gauss sum.
  AlphaSpec s2 = AlphaSpec::periodic({Integer(0)}, {Integer(2)});
  CFExpansion en = expand_nearest(s2, 6);
  for (int n = 1; n <= 6; ++n) {
    CHECK(en.a[n] == 2);
    CHECK(en.s[n] == 1);
  }
  BrjunoValue v2 = phi_tilde(s2, 1e-11);
  CHECK(std::abs(v2.value - sqrt2m1_phi()) <= v2.tail_bound + 1e-11);
}

TEST_CASE("phi_tilde is symmetric under alpha -> 1-alpha") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dd(2, 60), pd(1, 40), qd(2, 40);
  int tested = 0;
  while (tested < 100) {
    Integer d(dd(rng));
    Integer s = sqrt(d);
    if (s * s == d) continue;  // need an irrational root
    QuadraticSurd x =
        QuadraticSurd::make(pd(rng), 1, qd(rng), d).frac();  // in (0,1)
    if (x.is_rational()) continue;
    QuadraticSurd y = x.one_minus();
    BrjunoValue va = phi_tilde(spec_of_surd(x), 1e-9);
    BrjunoValue vb = phi_tilde(spec_of_surd(y), 1e-9);
    CHECK(std::abs(va.value - vb.value) <=
          2 * (va.tail_bound + vb.tail_bound) + 1e-12);
    ++tested;
  }
}

TEST_CASE("fibonacci tail majorant") {
  double t3 = fibonacci_tail(3, 1.0);
  CHECK(t3 > 1.0);
  CHECK(t3 < 1.6);
  CHECK(fibonacci_tail(3, 2.0) == doctest::Approx(2 * t3).epsilon(1e-13));

  for (int n = 3; n < 40; ++n) {
    CHECK(fibonacci_tail(n + 1, 1.0) < fibonacci_tail(n, 1.0));
  }
  // deep tails are tiny: the sum is ~2.6x its first term log(F_{n+1})/F_{n+1}
  CHECK(fibonacci_tail(33, 1.0) < 1e-5);
  CHECK(fibonacci_tail(60, 1.0) < 1e-10);
  CHECK_THROWS_AS(fibonacci_tail(2, 1.0), std::invalid_argument);

  // extension below 3 adds the uniform per-term cap C/e
  CHECK(unknown_tail_majorant(3, 2.0) == doctest::Approx(fibonacci_tail(3, 2.0)));
  CHECK(unknown_tail_majorant(2, 2.0) ==
        doctest::Approx(fibonacci_tail(3, 2.0) + 2.0 / std::exp(1.0)));
}
