#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "superlab/numerics.hpp"

using namespace superlab;
using cd = std::complex<double>;

namespace {

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("canonical phase range") {
  CHECK(canonical_phase(0.0) == 0.0);
  CHECK(canonical_phase(std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(canonical_phase(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(canonical_phase(3 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(canonical_phase(7.0) == doctest::Approx(7.0 - 2 * std::numbers::pi));
}

TEST_CASE("LogComplex round trip and zero") {
  const cd z{-3.25, 0.125};
  const LogComplex l = LogComplex::from_complex(z);
  CHECK(rel(l.to_complex(), z) < 1e-12);
  CHECK(LogComplex::from_complex(0.0).is_zero());
  CHECK((l * LogComplex::zero()).is_zero());
  CHECK((LogComplex::zero() + l) == l);
  const LogComplex neg = LogComplex::from_real(-2.0);
  CHECK(neg.phase() == doctest::Approx(std::numbers::pi));
  CHECK(neg.log_mag() == doctest::Approx(std::log(2.0)));
}

TEST_CASE("LogComplex multiplication adds logs and phases") {
  const LogComplex a(10.0, 2.0), b(-3.0, 2.0);
  const LogComplex p = a * b;
  CHECK(p.log_mag() == doctest::Approx(7.0));
  CHECK(p.phase() == doctest::Approx(4.0 - 2 * std::numbers::pi));
}

TEST_CASE("LogComplex addition beyond the absorb gap is exact") {
  const LogComplex big(1000.0, 0.3), small(1000.0 - 801.0, -1.0);
  CHECK((big + small) == big);
  CHECK((small + big) == big);
  CHECK((big - small) == big);
}

TEST_CASE("LogComplex matches native arithmetic on random pairs") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> lm(-50.0, 50.0), ph(-std::numbers::pi, std::numbers::pi);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const LogComplex a(lm(rng), ph(rng)), b(lm(rng), ph(rng));
    const cd za = a.to_complex(), zb = b.to_complex();
    worst = std::max(worst, rel((a * b).to_complex(), za * zb));
    worst = std::max(worst, rel((a / b).to_complex(), za / zb));
    const cd s = za + zb;
    // Cancellation within a pair is not a LogComplex property; compare on the larger operand's scale.
    worst = std::max(worst, std::abs((a + b).to_complex() - s) / std::max(std::abs(za), std::abs(zb)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("log_sum factors the maximum and handles far-apart scales") {
  std::vector<LogComplex> terms{LogComplex(2000.0, 0.0), LogComplex(2000.0, std::numbers::pi),
                                LogComplex(1990.0, 0.0)};
  const LogComplex s = log_sum(terms);
  CHECK(s.log_mag() == doctest::Approx(1990.0).epsilon(1e-9));
  CHECK(std::abs(canonical_phase(s.phase())) < 1e-9);
  const cd r = ratio(LogComplex(3000.0, 0.5), LogComplex(3000.0 + std::log(2.0), 0.0));
  CHECK(std::abs(r - std::polar(0.5, 0.5)) < 1e-12);
}

TEST_CASE("log_binomial examples and oracles") {
  CHECK(log_binomial(4, 2) == doctest::Approx(std::log(6.0)).epsilon(1e-14));
  CHECK(log_binomial(0, 0) == 0.0);
  const double exact = oracle::log_binomial_exact(1000, 500);
  CHECK(std::abs(log_binomial(1000, 500) - exact) / exact < 1e-12);
  CHECK_THROWS_AS(log_binomial(3, 4), std::domain_error);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    const long long N = std::uniform_int_distribution<long long>(1, 1000000)(rng);
    const long long n = std::uniform_int_distribution<long long>(0, N)(rng);
    const double ref = oracle::log_binomial_lgamma(N, n);
    CHECK(std::abs(log_binomial(N, n) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("hermite_log examples") {
  const LogComplex h0 = hermite_log(0, 0.7);
  CHECK(h0.log_mag() == 0.0);
  CHECK(h0.phase() == 0.0);
  const LogComplex h2 = hermite_log(2, 0.5);
  CHECK(std::abs(h2.log_mag()) < 1e-15);
  CHECK(h2.phase() == doctest::Approx(std::numbers::pi));
}

TEST_CASE("hermite_log against the explicit-sum oracle at n = 500") {
  for (double z : {0.5, -1.7, 3.0, 20.0}) {
    const auto [lm, sign] = oracle::log_and_sign<1200>(oracle::hermite_explicit<1200>(500, oracle::real<1200>(z)));
    const LogComplex h = hermite_log(500, z);
    CHECK(std::abs(h.log_mag() - lm) < 1e-10 * std::max(1.0, std::abs(lm)));
    CHECK(std::cos(h.phase()) == doctest::Approx(sign));
  }
}

TEST_CASE("hermite_log at n = 2000 against a high-precision recurrence") {
  for (double z : {0.5, 7.3, -50.0, 50.0}) {
    const auto [lm, sign] = oracle::log_and_sign<300>(oracle::hermite_recurrence<300>(2000, oracle::real<300>(z)));
    const LogComplex h = hermite_log(2000, z);
    CHECK(std::abs(h.log_mag() - lm) < 1e-10 * std::abs(lm));
    CHECK(std::cos(h.phase()) == doctest::Approx(sign));
  }
}

TEST_CASE("hermite_log_table satisfies the recurrence") {
  for (double z : {0.5, 2.25, -9.0}) {
    const auto t = hermite_log_table(2000, z);
    double worst = 0.0;
    for (int n = 1; n < 2000; ++n) {
      // Residual scaled by |H_{n+1}|, evaluated through ratios to stay in range.
      const LogComplex lhs = t[n + 1];
      const LogComplex rhs = LogComplex::from_real(2 * z) * t[n] - LogComplex::from_real(2.0 * n) * t[n - 1];
      if (lhs.is_zero()) continue;
      worst = std::max(worst, std::abs(ratio(lhs - rhs, lhs)));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("hermite_function examples") {
  CHECK(hermite_function(0, 0.0) == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-15));
  CHECK(hermite_function(1, 0.0) == 0.0);
  const auto [lm, sign] = oracle::hermite_function_log<400>(100, 1.3);
  const double v = hermite_function(100, 1.3);
  CHECK(std::abs(std::log(std::abs(v)) - lm) < 1e-10);
  CHECK((v > 0 ? 1 : -1) == sign);
}

TEST_CASE("hermite_function parity") {
  for (int n : {0, 1, 2, 7, 30, 101}) {
    for (double y : {0.3, 1.9, 6.5}) {
      const double s = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(hermite_function(n, -y) == s * hermite_function(n, y));
    }
  }
}

TEST_CASE("hermite_function stays finite at very high order") {
  const double v = hermite_function(100000, 10.0);
  CHECK(std::isfinite(v));
  const auto t = hermite_function_log_table(100000, 300.0);
  CHECK(std::isfinite(t.back().log_mag()));
  CHECK(std::isfinite(t.front().log_mag()));
}

TEST_CASE("hermite_function orthonormality") {
  const QuadratureRule rule = composite_quadrature(-40.0, 40.0, 20);
  std::vector<std::vector<double>> psi(51, std::vector<double>(rule.size()));
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const auto t = hermite_function_log_table(50, rule.nodes[i]);
    for (int n = 0; n <= 50; ++n) psi[n][i] = t[n].to_complex().real();
  }
  double worst = 0.0;
  for (int m = 0; m <= 50; ++m) {
    for (int n = m; n <= 50; ++n) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < rule.size(); ++i) s += rule.weights[i] * psi[m][i] * psi[n][i];
      worst = std::max(worst, std::abs(s - (m == n ? 1.0 : 0.0)));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("legendre_P examples and errors") {
  CHECK(legendre_P(0, 0.3) == 1.0);
  CHECK(legendre_P(1, -0.4) == doctest::Approx(-0.4));
  CHECK(legendre_P(2, 0.5) == doctest::Approx(-0.125));
  CHECK_THROWS_AS(legendre_P(2, 1.5), std::domain_error);
}

TEST_CASE("legendre_P against the explicit sum") {
  for (int l : {3, 10, 40, 100}) {
    for (double u : {-0.93, -0.2, 0.0, 0.61, 1.0}) {
      CHECK(legendre_P(l, u) == doctest::Approx(oracle::legendre(l, u)).epsilon(1e-11).scale(1.0));
    }
  }
}

TEST_CASE("legendre derivatives against central differences") {
  const double h = 1e-4;
  for (int l : {1, 2, 5, 12}) {
    for (double u : {-0.7, 0.1, 0.55}) {
      const LegendreValue v = legendre_with_derivatives(l, u);
      const double fd1 = (legendre_P(l, u + h) - legendre_P(l, u - h)) / (2 * h);
      const double fd2 = (legendre_P(l, u + h) - 2 * legendre_P(l, u) + legendre_P(l, u - h)) / (h * h);
      CHECK(v.p == doctest::Approx(legendre_P(l, u)));
      CHECK(v.dp == doctest::Approx(fd1).epsilon(1e-6).scale(1.0));
      CHECK(v.d2p == doctest::Approx(fd2).epsilon(1e-4).scale(1.0));
    }
  }
}

TEST_CASE("quadrature examples") {
  CHECK(quadrature(2, -1, 1).integrate([](double u) { return u * u; }) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(std::abs(quadrature(32, 0, std::numbers::pi).integrate([](double u) { return std::sin(u); }) - 2.0) < 1e-12);
  CHECK(quadrature(8, -1, 1).integrate([](double) { return 1.0; }) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(quadrature(8, 1, 1), std::domain_error);
  CHECK_THROWS_AS(quadrature(1, 0, 1), std::domain_error);
}

TEST_CASE("quadrature is exact for polynomials up to degree 2n-1") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int n : {2, 5, 11}) {
    const int deg = std::min(2 * n - 1, 20);
    std::vector<double> c(deg + 1);
    for (double& v : c) v = coef(rng);
    const double a = -0.7, b = 1.9;
    auto poly = [&](double u) {
      double s = 0.0;
      for (int k = deg; k >= 0; --k) s = s * u + c[k];
      return s;
    };
    double exact = 0.0;
    for (int k = 0; k <= deg; ++k) exact += c[k] * (std::pow(b, k + 1) - std::pow(a, k + 1)) / (k + 1);
    CHECK(std::abs(quadrature(n, a, b).integrate(poly) - exact) < 1e-12 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("composite quadrature panels") {
  CHECK(panel_count(0.0, 1.0, 200) == 10);
  const QuadratureRule r = composite_quadrature_panels(-3.0, 5.0, 7);
  CHECK(r.size() == 7 * kPanelOrder);
  CHECK(r.interval.first == -3.0);
  CHECK(r.interval.second == 5.0);
  CHECK(r.integrate([](double u) { return std::exp(-u * u); }) ==
        doctest::Approx(std::sqrt(std::numbers::pi) / 2 * (std::erf(5.0) + std::erf(3.0))).epsilon(1e-13));
  CHECK_THROWS_AS(composite_quadrature_panels(0.0, 1.0, 0), std::domain_error);
}
