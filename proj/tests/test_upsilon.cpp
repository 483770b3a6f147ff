#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numeric>

#include "brjuno/errors.hpp"
#include "brjuno/upsilon.hpp"
#include "doctest.h"

using namespace brjuno;

namespace {

double golden() { return (std::sqrt(5.0) - 1.0) / 2.0; }

const double kLog2Pi = std::log(2.0 * M_PI);

Budget quick_budget() {
  Budget b;
  b.series_N = 2048;
  return b;
}

}  // namespace

TEST_CASE("closed forms at 0/1 and 1/2") {
  UpsilonValue u0 = upsilon_rational(Rational(0, 1));
  CHECK(u0.method == UpsilonMethod::rational_formula);
  CHECK(u0.value == doctest::Approx(kLog2Pi).epsilon(1e-12));
  CHECK(u0.error_estimate <= 1e-8);

  // Phi_trunc(1/2) = log 2 and L(1/2) = 1/2 cancel, leaving log(2 pi)/2.
  UpsilonValue uh = upsilon_rational(Rational(1, 2));
  CHECK(uh.value == doctest::Approx(kLog2Pi / 2).epsilon(1e-12));
  CHECK(uh.error_estimate <= 1e-8);

  UpsilonValue ut = upsilon_rational(Rational(1, 3));
  CHECK(ut.value >= 0.0);
  CHECK(ut.value <= kLog2Pi);
}

TEST_CASE("dispatch sends rationals to the finite formula") {
  UpsilonValue via_dispatch = upsilon(AlphaSpec::rational_of(1, 2));
  UpsilonValue direct = upsilon_rational(Rational(1, 2));
  CHECK(via_dispatch.method == UpsilonMethod::rational_formula);
  CHECK(via_dispatch.value == direct.value);

  // A decimal literal that is exactly rational still dispatches as rational.
  UpsilonValue dec = upsilon(parse_alpha("1/3"));
  CHECK(dec.method == UpsilonMethod::rational_formula);
}

TEST_CASE("golden mean takes the series route and is reproducible") {
  Budget b;  // defaults: N = 4096
  UpsilonValue u = upsilon(AlphaSpec::golden(), b);
  CHECK(u.method == UpsilonMethod::brjuno_series);
  CHECK(u.value > 0.10);
  CHECK(u.value < 0.17);
  CHECK(u.error_estimate > 0);
  CHECK(u.error_estimate < 0.1);
  CHECK(u.diagnostics.series_N == 4096);
  CHECK(u.diagnostics.radius > 0.31);
  CHECK(u.diagnostics.radius < 0.34);

  // Re-run the two ingredient modules independently: the dispatch must agree
  // with phi + log r within the combined error estimates.
  BrjunoValue ph = phi(AlphaSpec::golden(), b.tol, b.precision_bits);
  RadiusEstimate r =
      conformal_radius(AlphaSpec::golden(), b.series_N, RadiusMethod::slope_fit);
  double rebuilt = ph.value + std::log(r.value);
  CHECK(std::abs(u.value - rebuilt) <= u.error_estimate + ph.tail_bound + 1e-12);

  // And the dedicated series-route entry point is the same computation.
  UpsilonValue ub = upsilon_brjuno(AlphaSpec::golden(), b);
  CHECK(ub.value == doctest::Approx(u.value).epsilon(1e-15));
}

TEST_CASE("budget truncation moves the value only slightly") {
  Budget small;
  small.series_N = 1024;
  UpsilonValue a = upsilon(AlphaSpec::golden(), small);
  UpsilonValue b = upsilon(AlphaSpec::golden());
  CHECK(std::abs(a.value - b.value) < 0.05);
}

TEST_CASE("doubly exponential digit probe lands on the sequence route") {
  AlphaSpec probe = AlphaSpec::finite_digits(
      {Integer(0), Integer(2), Integer(4), Integer(16), Integer(65536)},
      false);
  UpsilonValue u = upsilon(probe);
  CHECK(u.method == UpsilonMethod::cremer_sequence);
  CHECK(std::isfinite(u.value));
  CHECK_FALSE(u.diagnostics.sequence.empty());
  CHECK(u.diagnostics.truncated);
  CHECK_FALSE(u.diagnostics.note.empty());
}

TEST_CASE("cremer sequence of the golden mean") {
  CremerSequence cs = cremer_sequence(AlphaSpec::golden(), 30);
  REQUIRE(cs.terms.size() == 6);  // q_n = 1,1,2,3,5,8; 13 passes the cap
  CHECK(cs.truncated);

  // n = 0 term: Phi_0 = log(1/alpha_0) and d from the explicit fixed point.
  double g = golden();
  double expect0 = std::log(1.0 / g) + std::log(2.0 * std::sin(M_PI * g));
  CHECK(cs.terms[0].second == doctest::Approx(expect0).epsilon(1e-9));

  // Essentially decreasing: any increase stays under C log(q_{n+1})/q_{n+1}.
  long q_next[] = {1, 2, 3, 5, 8, 13};
  for (std::size_t i = 1; i + 1 < cs.terms.size(); ++i) {
    double increment = cs.terms[i + 1].second - cs.terms[i].second;
    double q = static_cast<double>(q_next[i + 1]);
    CHECK(increment <= 10.0 * std::log(q) / q);
  }

  // The prefix stays consistent with the series-route value (the distance
  // d_n only tracks the conformal radius up to a bounded factor, hence the
  // loose band).
  UpsilonValue series = upsilon(AlphaSpec::golden());
  CHECK(std::abs(cs.terms.back().second - series.value) < 0.5);

  CHECK_THROWS_AS(cremer_sequence(AlphaSpec::rational_of(1, 3), 10),
                  RationalInput);
}

TEST_CASE("every input maps to exactly one method") {
  struct Case {
    const char* text;
    UpsilonMethod expect;
  };
  const Case cases[] = {
      {"1/2", UpsilonMethod::rational_formula},
      {"cf:[0;1,1,1,1,1,1,1,1,1,1]", UpsilonMethod::rational_formula},
      {"pcf:[0;|1]", UpsilonMethod::brjuno_series},
      {"pcf:[0;|2]", UpsilonMethod::brjuno_series},
      {"cf:[0;2,4,16,65536,...]", UpsilonMethod::cremer_sequence},
  };
  Budget b = quick_budget();
  for (const Case& c : cases) {
    UpsilonValue u = upsilon(parse_alpha(c.text), b);
    CHECK_MESSAGE(u.method == c.expect, c.text, " -> ", method_name(u.method));
  }
}

TEST_CASE("rational upsilon stays inside the plotted range for q <= 12") {
  for (long q = 1; q <= 12; ++q)
    for (long p = 0; p <= q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      UpsilonValue u = upsilon_rational(Rational(p, q));
      CHECK_MESSAGE(u.value >= -0.1, p, "/", q, " -> ", u.value);
      CHECK_MESSAGE(u.value <= kLog2Pi + 0.1, p, "/", q, " -> ", u.value);
    }
}

TEST_CASE("approach sequences close in on their target") {
  std::vector<AlphaSpec> seq = approach_sequence(Rational(1, 2), {4, 16, 64});
  REQUIRE(seq.size() == 3);
  double prev_gap = 1.0;
  for (const AlphaSpec& a : seq) {
    double v = kernel_to_real(resolve_kernel(a), 128).to_double();
    double gap = std::abs(v - 0.5);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.01);

  ProbeResult pr = continuity_probe(AlphaSpec::rational_of(1, 2), seq,
                                    quick_budget());
  REQUIRE(pr.rows.size() == 3);
  CHECK(pr.target.method == UpsilonMethod::rational_formula);
  CHECK(pr.rows[0].delta > pr.rows[1].delta);
  CHECK(pr.rows[1].delta > pr.rows[2].delta);

  CHECK_THROWS_AS(approach_sequence(Rational(3, 2), {4}), std::domain_error);
  CHECK_THROWS_AS(approach_sequence(Rational(1, 2), {0}), std::domain_error);
}

TEST_CASE("mirror of a continued fraction is one minus the value") {
  // Golden [0;1,1,...] -> [0;2,1,1,...].
  AlphaSpec mg = mirror_spec(AlphaSpec::golden());
  Real v = kernel_to_real(resolve_kernel(mg), 192);
  Real expect = Real::of(1L, 192) - kernel_to_real(resolve_kernel(AlphaSpec::golden()), 192);
  CHECK(abs(v - expect).to_double() < 1e-50);

  // sqrt(2) - 1 = [0;2,2,...] -> 2 - sqrt(2) = [0;1,1,2,2,...].
  AlphaSpec m2 = mirror_spec(parse_alpha("pcf:[0;|2]"));
  Real v2 = kernel_to_real(resolve_kernel(m2), 192);
  Real e2 = Real::of(1L, 192) -
            kernel_to_real(resolve_kernel(parse_alpha("pcf:[0;|2]")), 192);
  CHECK(abs(v2 - e2).to_double() < 1e-50);

  // Rational and terminal-digit forms mirror exactly.
  AlphaSpec mr = mirror_spec(AlphaSpec::rational_of(1, 3));
  CHECK(kernel_rational(resolve_kernel(mr)) == Rational(2, 3));
  AlphaSpec md = mirror_spec(parse_alpha("cf:[0;3,1,4]"));  // 5/19
  CHECK(kernel_rational(resolve_kernel(md)) == Rational(14, 19));

  CHECK_THROWS_AS(mirror_spec(parse_alpha("dec:0.7@64")), std::domain_error);
  CHECK_THROWS_AS(mirror_spec(AlphaSpec::finite_digits({Integer(0), Integer(1)}, false)),
                  std::domain_error);
}

TEST_CASE("left and right probes at 1/2 agree") {
  Budget b = quick_budget();
  std::vector<AlphaSpec> left = approach_sequence(Rational(1, 2), {8, 32});
  std::vector<AlphaSpec> right;
  for (const AlphaSpec& a : left) right.push_back(mirror_spec(a));

  ProbeResult pl = continuity_probe(AlphaSpec::rational_of(1, 2), left, b);
  ProbeResult pr = continuity_probe(AlphaSpec::rational_of(1, 2), right, b);
  // Deltas shrink on both sides and the two sides track each other.
  CHECK(pl.rows[1].delta < pl.rows[0].delta);
  CHECK(pr.rows[1].delta < pr.rows[0].delta);
  CHECK(std::abs(pl.rows[1].value.value - pr.rows[1].value.value) < 0.05);
  CHECK(pl.rows[1].delta < 0.15);
  CHECK(pr.rows[1].delta < 0.15);
}
