#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "brjuno/series.hpp"
#include "doctest.h"

using namespace brjuno;

namespace {

std::complex<double> cd(const Complex& z) { return z.to_std(); }

// Independent check for the parabolic coefficient: plain long-double
// truncated-polynomial composition, no shared code with the library path.
std::complex<long double> brute_force_A(long p, long q, int order) {
  using C = std::complex<long double>;
  const long double pi = 3.14159265358979323846264338327950288L;
  C lambda = std::polar<long double>(1.0L, 2.0L * pi * static_cast<long double>(p) / q);
  // coefficient arrays over degrees 0..order
  std::vector<C> h(order + 1, C(0));
  h[1] = lambda;
  h[2] = C(1);
  for (int step = 1; step < q; ++step) {
    // next = lambda*h + h^2, truncated
    std::vector<C> next(order + 1, C(0));
    for (int i = 0; i <= order; ++i) next[i] = lambda * h[i];
    for (int i = 0; i <= order; ++i) {
      for (int j = 0; i + j <= order; ++j) next[i + j] += h[i] * h[j];
    }
    h = next;
  }
  return h[q + 1];
}

}  // namespace

TEST_CASE("series arithmetic basics") {
  TruncatedSeries id = series_identity(4);
  TruncatedSeries z2 = series_zero(4);
  z2.c[1] = Complex::of({1.0, 0.0});

  TruncatedSeries f = series_add(id, z2);  // z + z^2
  CHECK(cd(f.coeff(1)) == std::complex<double>(1, 0));
  CHECK(cd(f.coeff(2)) == std::complex<double>(1, 0));

  // (z + z^2)^2 = z^2 + 2 z^3 + z^4
  TruncatedSeries sq = series_mul(f, f);
  CHECK(cd(sq.coeff(1)) == std::complex<double>(0, 0));
  CHECK(cd(sq.coeff(2)) == std::complex<double>(1, 0));
  CHECK(cd(sq.coeff(3)) == std::complex<double>(2, 0));
  CHECK(cd(sq.coeff(4)) == std::complex<double>(1, 0));

  CHECK_THROWS_AS(series_mul(f, series_zero(5)), std::invalid_argument);
  CHECK_THROWS_AS(series_zero(0), std::invalid_argument);
}

TEST_CASE("compose: identity, hand example, rotations") {
  TruncatedSeries g = series_zero(3);
  g.c[0] = Complex::of({0.5, 0.25});
  g.c[1] = Complex::of({-1.0, 2.0});
  g.c[2] = Complex::of({0.125, 0.0});

  TruncatedSeries idg = compose(series_identity(3), g);
  for (int k = 1; k <= 3; ++k) {
    CHECK(std::abs(cd(idg.coeff(k)) - cd(g.coeff(k))) < 1e-35);
  }

  // f = g = z + z^2 at order 3: f(g) = z + 2z^2 + 2z^3
  TruncatedSeries f = series_identity(3);
  f.c[1] = Complex::of({1.0, 0.0});
  TruncatedSeries fg = compose(f, f);
  CHECK(std::abs(cd(fg.coeff(1)) - 1.0) < 1e-35);
  CHECK(std::abs(cd(fg.coeff(2)) - 2.0) < 1e-35);
  CHECK(std::abs(cd(fg.coeff(3)) - 2.0) < 1e-35);

  // degree-1 rotations multiply
  TruncatedSeries r1 = series_zero(2), r2 = series_zero(2);
  std::complex<double> l1 = std::polar(1.0, 0.7), l2 = std::polar(1.0, -2.1);
  r1.c[0] = Complex::of(l1);
  r2.c[0] = Complex::of(l2);
  TruncatedSeries r = compose(r1, r2);
  CHECK(std::abs(cd(r.coeff(1)) - l1 * l2) < 1e-15);
  CHECK(std::abs(cd(r.coeff(2))) < 1e-35);
}

TEST_CASE("compose is associative") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_series = [&](int N) {
    TruncatedSeries s = series_zero(N);
    for (auto& c : s.c) c = Complex::of({u(rng), u(rng)});
    return s;
  };
  for (int trial = 0; trial < 5; ++trial) {
    TruncatedSeries f = random_series(16), g = random_series(16),
                    h = random_series(16);
    TruncatedSeries lhs = compose(compose(f, g), h);
    TruncatedSeries rhs = compose(f, compose(g, h));
    for (int k = 1; k <= 16; ++k) {
      double scale = std::max(1.0, std::abs(cd(lhs.coeff(k))));
      CHECK(std::abs(cd(lhs.coeff(k)) - cd(rhs.coeff(k))) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("quadratic jets") {
  TruncatedSeries j0 = quadratic_jet(Rational(0), 4);
  CHECK(std::abs(cd(j0.coeff(1)) - 1.0) < 1e-35);
  CHECK(std::abs(cd(j0.coeff(2)) - 1.0) < 1e-35);
  CHECK(std::abs(cd(j0.coeff(3))) < 1e-35);

  TruncatedSeries jh = quadratic_jet(Rational(1, 2), 4);
  CHECK(std::abs(cd(jh.coeff(1)) + 1.0) < 1e-35);

  TruncatedSeries jt = quadratic_jet(Rational(1, 3), 4);
  double s3 = std::sqrt(3.0) / 2;
  CHECK(cd(jt.coeff(1)).real() == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(cd(jt.coeff(1)).imag() == doctest::Approx(s3).epsilon(1e-15));

  // angle is reduced mod 1 exactly: 7/3 and 1/3 give the same multiplier
  TruncatedSeries j73 = quadratic_jet(Rational(7, 3), 4);
  CHECK(std::abs(cd(j73.coeff(1)) - cd(jt.coeff(1))) < 1e-30);

  CHECK_THROWS_AS(quadratic_jet(Rational(1, 3), 1), std::invalid_argument);
}

TEST_CASE("parabolic coefficient: hand values") {
  ParabolicData d1 = parabolic_coefficient(Rational(0));
  CHECK(std::abs(cd(d1.A) - 1.0) < 1e-30);
  CHECK(d1.la.to_double() == doctest::Approx(1.0).epsilon(1e-30));
  CHECK(d1.residual.to_double() == 0.0);
  CHECK(d1.jet_order == 3);

  // P_{1/2}^{o2}(z) = z - 2 z^3 + z^4: A = -2, La = |1/(2*-2)|^{1/2} = 1/2
  ParabolicData d2 = parabolic_coefficient(Rational(1, 2));
  CHECK(std::abs(cd(d2.A) + 2.0) < 1e-30);
  CHECK(d2.la.to_double() == doctest::Approx(0.5).epsilon(1e-30));
  CHECK(d2.residual.to_double() <= 1e-30);
}

TEST_CASE("parabolic coefficient vs independent composition oracle") {
  for (auto [p, q] : std::vector<std::pair<long, long>>{
           {1, 3}, {2, 3}, {1, 4}, {3, 4}, {2, 5}, {3, 7}}) {
    ParabolicData d = parabolic_coefficient(Rational(p, q));
    std::complex<long double> want = brute_force_A(p, q, static_cast<int>(q) + 2);
    std::complex<double> got = cd(d.A);
    double scale = std::max<double>(1.0, std::abs(got));
    CHECK(std::abs(got.real() - static_cast<double>(want.real())) <= 1e-12 * scale);
    CHECK(std::abs(got.imag() - static_cast<double>(want.imag())) <= 1e-12 * scale);
    CHECK(d.la.to_double() ==
          doctest::Approx(std::pow(1.0 / (q * std::abs(got)), 1.0 / q))
              .epsilon(1e-12));
  }
}

TEST_CASE("multiplicity and conjugation symmetry across q <= 16, spot q = 40") {
  auto check_q = [](long q) {
    for (long p = 1; p <= q; ++p) {
      if (std::gcd(p, q) != 1 || (q > 1 && p == q)) continue;
      ParabolicData d = parabolic_coefficient(Rational(p, q));
      double abs_a = d.A.abs().to_double();
      CHECK(d.residual.to_double() <= 1e-10);
      CHECK(abs_a > 0);
      if (p * 2 < q) {
        ParabolicData m = parabolic_coefficient(Rational(q - p, q));
        // A conjugates, so |A| and La agree
        CHECK(std::abs(d.la.to_double() - m.la.to_double()) <=
              1e-12 * d.la.to_double());
        CHECK(std::abs(cd(m.A) - std::conj(cd(d.A))) <=
              1e-10 * std::max(1.0, abs_a));
      }
    }
  };
  for (long q = 1; q <= 16; ++q) check_q(q);
  check_q(40);

  CHECK_THROWS_AS(parabolic_coefficient(Rational(1, 201)), std::domain_error);
}
