#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <vector>

#include "brjuno/dynamics.hpp"
#include "brjuno/errors.hpp"
#include "doctest.h"

using namespace brjuno;
using CD = std::complex<double>;

namespace {

CD lambda_of(double alpha) { return std::polar(1.0, 2 * M_PI * alpha); }

// Coefficients (degree 0..2^q) of P^{oq}(z) - z by plain polynomial
// composition in doubles; only sane for small q. Independent of the library's
// composed-map evaluation path.
std::vector<CD> expanded_fq(CD lambda, int q) {
  std::vector<CD> h = {CD(0), CD(1)};  // h(z) = z
  for (int step = 0; step < q; ++step) {
    int deg = static_cast<int>(h.size()) - 1;
    std::vector<CD> next(2 * deg + 1, CD(0));
    for (int i = 0; i <= deg; ++i) next[i] += lambda * h[i];
    for (int i = 0; i <= deg; ++i)
      for (int j = 0; j <= deg; ++j) next[i + j] += h[i] * h[j];
    h = std::move(next);
  }
  h[1] -= 1.0;  // subtract z
  return h;
}

// All roots of a monic-normalizable polynomial via the companion matrix.
std::vector<CD> companion_roots(std::vector<CD> c) {
  while (std::abs(c.back()) < 1e-14) c.pop_back();
  int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) M(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) M(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
  std::vector<CD> out(n);
  for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()[i];
  return out;
}

double golden() { return (std::sqrt(5.0) - 1) / 2; }

}  // namespace

TEST_CASE("q = 1: the nonzero fixed point is 1 - lambda") {
  AlphaSpec g = AlphaSpec::golden();
  std::vector<CycleSet> sets = periodic_points(g, 1);
  REQUIRE(sets.size() == 1);
  REQUIRE(sets[0].points.size() == 1);

  CD lam = lambda_of(golden());
  CD expect = 1.0 - lam;
  CHECK(std::abs(sets[0].points[0].z - expect) < 1e-12);
  CHECK(sets[0].points[0].exact_period == 1);
  // P'(z*) = lambda + 2(1 - lambda) = 2 - lambda
  CHECK(std::abs(sets[0].points[0].multiplier - (2.0 - lam)) < 1e-12);
  // d = |1 - e^{2 i pi alpha}| = 2 sin(pi alpha)
  CHECK(sets[0].d == doctest::Approx(2 * std::sin(M_PI * golden())).epsilon(1e-12));
  CHECK(sets[0].label == "X(1)");
}

TEST_CASE("degree bookkeeping is divisor-closed through q = 5") {
  std::vector<CycleSet> sets = periodic_points(AlphaSpec::golden(), 5);
  // Points of exact period q among the 2^q roots of P^{oq} - id:
  // subtract lower divisor levels (origin contributes 1 at level 1).
  std::vector<int> with0(6, 0);
  with0[1] = 2;
  for (int q = 2; q <= 5; ++q) {
    int total = 1 << q;
    for (int d = 1; d < q; ++d)
      if (q % d == 0) total -= with0[d];
    with0[q] = total;
  }
  for (int q = 1; q <= 5; ++q) {
    int expect = with0[q] - (q == 1 ? 1 : 0);  // drop the origin
    CHECK(static_cast<int>(sets[q - 1].points.size()) == expect);
    CHECK(sets[q - 1].near_collisions == 0);
    for (const auto& pt : sets[q - 1].points) CHECK(pt.exact_period == q);
  }
}

TEST_CASE("root sets match a companion-matrix oracle at q = 3") {
  AlphaSpec g = AlphaSpec::golden();
  std::vector<CycleSet> sets = periodic_points(g, 3);

  std::vector<CD> oracle = companion_roots(expanded_fq(lambda_of(golden()), 3));
  REQUIRE(oracle.size() == 8);

  // Library view of the same multiset: origin + exact periods 1 and 3.
  std::vector<CD> lib = {CD(0.0, 0.0)};
  for (const auto& pt : sets[0].points) lib.push_back(pt.z);
  for (const auto& pt : sets[2].points) lib.push_back(pt.z);
  REQUIRE(lib.size() == 8);
  CHECK(sets[1].points.size() == 2);  // one genuine 2-cycle, disjoint from f_3's roots

  for (CD r : oracle) {
    double best = 1e9;
    for (CD l : lib) best = std::min(best, std::abs(r - l));
    CHECK(best < 1e-8);
  }
  for (CD l : lib) {
    double best = 1e9;
    for (CD r : oracle) best = std::min(best, std::abs(l - r));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("parabolic alpha = 0: the fixed points collide at the origin") {
  std::vector<CycleSet> sets = periodic_points(AlphaSpec::rational_of(0, 1), 2);
  CHECK(sets[0].points.empty());  // only z = 0, which is excluded
  CHECK(std::isinf(sets[0].d));
  // Exact period 2 at alpha = 0: roots of z^2 + 3z + ... -> {-1 +/- i}.
  REQUIRE(sets[1].points.size() == 2);
  for (const auto& pt : sets[1].points) {
    CHECK(std::abs(pt.z.real() + 1.0) < 1e-10);
    CHECK(std::abs(std::abs(pt.z.imag()) - 1.0) < 1e-10);
  }
  CHECK(sets[1].d == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(periodic_points(AlphaSpec::golden(), 0), std::invalid_argument);
  CHECK_THROWS_AS(periodic_points(AlphaSpec::golden(), 13), std::invalid_argument);
  CHECK_THROWS_AS(distance_sequence(AlphaSpec::golden(), -1), std::invalid_argument);
}

TEST_CASE("distance sequence of the golden mean") {
  DistanceSequence seq = distance_sequence(AlphaSpec::golden(), 5);
  REQUIRE(seq.rows.size() == 6);
  CHECK_FALSE(seq.truncated);
  // q_n = 1, 1, 2, 3, 5, 8
  long expect_q[] = {1, 1, 2, 3, 5, 8};
  for (int n = 0; n <= 5; ++n) {
    CHECK(seq.rows[n].n == n);
    CHECK(seq.rows[n].q.convert_to<long>() == expect_q[n]);
  }
  CHECK(seq.rows[0].d == doctest::Approx(2 * std::sin(M_PI * golden())).epsilon(1e-9));
  for (int n = 1; n <= 5; ++n) {
    CHECK(seq.rows[n].d > 0);
    CHECK(seq.rows[n].d <= seq.rows[n - 1].d + 1e-12);
  }
}

TEST_CASE("distance sequence truncates at the degree cap") {
  // Golden q_n: 1,1,2,3,5,8,13 -> 13 > 12 stops after n = 5.
  DistanceSequence seq = distance_sequence(AlphaSpec::golden(), 30);
  CHECK(seq.truncated);
  REQUIRE(seq.rows.size() == 6);
  CHECK(seq.rows.back().q.convert_to<long>() == 8);

  // sqrt(2) - 1 = [0;2,2,2,...]: q_n = 1, 2, 5, 12, 29 -> keeps n <= 3.
  DistanceSequence s2 = distance_sequence(parse_alpha("pcf:[0;|2]"), 10);
  CHECK(s2.truncated);
  REQUIRE(s2.rows.size() == 4);
  CHECK(s2.rows.back().q.convert_to<long>() == 12);
  for (std::size_t i = 1; i < s2.rows.size(); ++i)
    CHECK(s2.rows[i].d <= s2.rows[i - 1].d + 1e-12);
}

TEST_CASE("explosion cycle at 1/2: size, orbit structure, oracle agreement") {
  Rational half(1, 2);
  double eps = 1e-4;
  AlphaSpec a = AlphaSpec::rational_of(half + Rational(eps));
  CycleSet c = explosion_cycle(half, a);

  REQUIRE(c.points.size() == 2);
  CHECK(c.label == "C(1/2)");
  // |z| ~ |2 i pi q eps / A|^{1/q} with A = -2, q = 2: sqrt(2 pi eps).
  double predicted = std::sqrt(2 * M_PI * eps);
  for (const auto& pt : c.points) {
    CHECK(std::abs(pt.z) == doctest::Approx(predicted).epsilon(0.03));
    CHECK(pt.exact_period == 2);
  }
  // Forward invariance: P maps the cycle onto itself (swap).
  CD lam = lambda_of(0.5 + eps);
  CD image = lam * c.points[0].z + c.points[0].z * c.points[0].z;
  CHECK(std::abs(image - c.points[1].z) < 1e-10);

  // Same points appear in the full period-2 root set.
  std::vector<CycleSet> sets = periodic_points(a, 2);
  for (const auto& pt : c.points) {
    double best = 1e9;
    for (const auto& xp : sets[1].points)
      best = std::min(best, std::abs(pt.z - xp.z));
    CHECK(best < 1e-9);
  }
}

TEST_CASE("explosion cycle: degenerate set and preconditions") {
  Rational half(1, 2);
  CycleSet c = explosion_cycle(half, AlphaSpec::rational_of(1, 2));
  REQUIRE(c.points.size() == 1);
  CHECK(c.points[0].z == CD(0.0, 0.0));
  CHECK(c.d == 0.0);

  // Outside the birth disk 1/q^3 = 1/8.
  CHECK_THROWS_AS(explosion_cycle(half, AlphaSpec::rational_of(3, 4)),
                  std::domain_error);
  // Interval input straddling p/q cannot be separated.
  CHECK_THROWS_AS(explosion_cycle(half, parse_alpha("dec:0.5@64")),
                  PrecisionExhausted);
}

TEST_CASE("explosion cycle shrinks onto the origin as alpha -> p/q") {
  Rational half(1, 2);
  double prev = 1e9;
  for (double eps : {1e-3, 1e-4, 1e-5, 1e-6}) {
    CycleSet c = explosion_cycle(half, AlphaSpec::rational_of(half + Rational(eps)));
    CHECK(c.d < prev);
    prev = c.d;
  }
  CHECK(prev < 3e-3);  // sqrt(2 pi * 1e-6) ~ 2.5e-3
}

TEST_CASE("explosion cycles at q = 3 and 5 agree with the full root sets") {
  for (long pp : {1L, 2L}) {
    Rational pq(pp, 3);
    AlphaSpec a = AlphaSpec::rational_of(pq + Rational(1e-4));
    CycleSet c = explosion_cycle(pq, a);
    REQUIRE(c.points.size() == 3);
    std::vector<CycleSet> sets = periodic_points(a, 3);
    for (const auto& pt : c.points) {
      double best = 1e9;
      for (const auto& xp : sets[2].points)
        best = std::min(best, std::abs(pt.z - xp.z));
      CHECK(best < 1e-9);
    }
  }
  Rational pq(2, 5);
  AlphaSpec a = AlphaSpec::rational_of(pq + Rational(-1e-5));
  CycleSet c = explosion_cycle(pq, a);
  REQUIRE(c.points.size() == 5);
  std::vector<CycleSet> sets = periodic_points(a, 5);
  for (const auto& pt : c.points) {
    double best = 1e9;
    for (const auto& xp : sets[4].points)
      best = std::min(best, std::abs(pt.z - xp.z));
    CHECK(best < 1e-9);
  }
}

TEST_CASE("z_eps check: 0/1 pins the rhs at log(2 pi), gap -> 0") {
  ZEpsilonCheck c4 = z_epsilon_check(Rational(0, 1), 1e-4);
  CHECK(c4.rhs == doctest::Approx(std::log(2 * M_PI)).epsilon(1e-12));
  CHECK(c4.gap < 0.01);
  ZEpsilonCheck c6 = z_epsilon_check(Rational(0, 1), 1e-6);
  CHECK(c6.gap < c4.gap);
}

TEST_CASE("z_eps check at 1/2: gap follows the sqrt(eps) rate") {
  ZEpsilonCheck c4 = z_epsilon_check(Rational(1, 2), 1e-4);
  ZEpsilonCheck c6 = z_epsilon_check(Rational(1, 2), 1e-6);
  CHECK(c4.gap < 0.1);
  CHECK(c6.gap < c4.gap / 5);  // eps^{1/2} predicts a factor of 10
}

TEST_CASE("z_eps check: both signs of eps work") {
  for (double e : {1e-5, -1e-5}) {
    ZEpsilonCheck c = z_epsilon_check(Rational(1, 2), e);
    CHECK(c.gap < 0.05);
  }
  CHECK_THROWS_AS(z_epsilon_check(Rational(1, 2), 0.0), std::invalid_argument);
}

TEST_CASE("rescaled map: residual vanishes at w = 0, shrinks with eps") {
  Rational half(1, 2);
  std::vector<CD> zero = {CD(0.0, 0.0)};
  CHECK(rescaled_map_residual(half, 1e-4, zero) == 0.0);

  std::vector<CD> ring;
  for (int k = 0; k < 8; ++k) ring.push_back(std::polar(0.5, 2 * M_PI * k / 8.0));
  ring.push_back(CD(1.0, 0.0));  // the marked cycle point itself
  double r3 = rescaled_map_residual(half, 1e-3, ring);
  double r5 = rescaled_map_residual(half, 1e-5, ring);
  CHECK(r5 < r3);
  CHECK(r3 < 1.0);
}
