#pragma once

// Independent reference computations for the tests. Each oracle uses a
// different algorithm or arithmetic from the code under test: exact integers,
// explicit polynomial sums, or brute-force sums at high precision.

#include <cmath>
#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace oracle {

namespace mp = boost::multiprecision;
using big_int = mp::cpp_int;
template <unsigned Digits>
using real = mp::number<mp::mpfr_float_backend<Digits>, mp::et_off>;

/// Exact C(N, n) as a big integer.
inline big_int binomial(long long N, long long n) {
  big_int r = 1;
  for (long long i = 1; i <= n; ++i) r = r * (N - n + i) / i;
  return r;
}

/// ln C(N, n) from the exact integer.
inline double log_binomial_exact(long long N, long long n) {
  return static_cast<double>(log(real<60>(binomial(N, n))));
}

/// ln C(N, n) from MPFR lgamma at 60 digits.
inline double log_binomial_lgamma(long long N, long long n) {
  using R = real<60>;
  return static_cast<double>(lgamma(R(N + 1)) - lgamma(R(n + 1)) - lgamma(R(N - n + 1)));
}

/// H_n(z) from the explicit sum n! Sum_m (-1)^m (2z)^{n-2m} / (m! (n-2m)!).
template <unsigned Digits>
real<Digits> hermite_explicit(int n, const real<Digits>& z) {
  using R = real<Digits>;
  R sum = 0;
  R nfact = 1;
  for (int k = 2; k <= n; ++k) nfact *= k;
  for (int m = 0; 2 * m <= n; ++m) {
    R mf = 1, rf = 1;
    for (int k = 2; k <= m; ++k) mf *= k;
    for (int k = 2; k <= n - 2 * m; ++k) rf *= k;
    const R term = nfact / (mf * rf) * pow(2 * z, n - 2 * m);
    sum += (m % 2 == 0) ? term : R(-term);
  }
  return sum;
}

/// H_n(z) from the recurrence carried at high precision.
template <unsigned Digits>
real<Digits> hermite_recurrence(int n, const real<Digits>& z) {
  using R = real<Digits>;
  R prev = 1, cur = 2 * z;
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    R next = 2 * z * cur - 2 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// ln|H_n(z)| and sign from a high-precision value.
template <unsigned Digits>
std::pair<double, int> log_and_sign(const real<Digits>& v) {
  if (v == 0) return {-INFINITY, 0};
  return {static_cast<double>(log(abs(v))), v > 0 ? 1 : -1};
}

/// psi_n(y) = (pi^{-1/4} / sqrt(2^n n!)) e^{-y^2/2} H_n(y) as (ln|psi|, sign).
template <unsigned Digits>
std::pair<double, int> hermite_function_log(int n, double y) {
  using R = real<Digits>;
  const R yy(y);
  const R pi = acos(R(-1));
  R norm = pow(pi, R(-0.25));
  for (int k = 1; k <= n; ++k) norm /= sqrt(R(2 * k));
  return log_and_sign<Digits>(norm * exp(-yy * yy / 2) * hermite_explicit<Digits>(n, yy));
}

/// P_l(u) = 2^{-l} Sum_k C(l,k)^2 (u-1)^{l-k} (u+1)^k.
inline double legendre(int l, double u) {
  using R = real<80>;
  R sum = 0;
  const R uu(u);
  for (int k = 0; k <= l; ++k) {
    const R c(binomial(l, k));
    sum += c * c * pow(uu - 1, l - k) * pow(uu + 1, k);
  }
  return static_cast<double>(sum / pow(R(2), l));
}

/// Brute-force time-evolved sequence value and energy-weighted sum:
///   h = Sum_k C(N,k) i^k e^{-i omega (k+1/2) t} H_{N-k}(g) H_k(y) e^{-y^2/2},
///   e = Sum_k (same term) omega (k + 1/2),
/// with Hermite values from the explicit sum. Returned as (ln|h|, arg h, e/h).
struct TimeSample {
  double log_mag;
  double phase;
  std::complex<double> energy;
};

template <unsigned Digits>
TimeSample time_evolved(int N, double g, double y, double omega, double t) {
  using R = real<Digits>;
  const R gg(g), yy(y), om(omega);
  const R theta = om * R(t);
  R re = 0, im = 0, ere = 0, eim = 0;
  for (int k = 0; k <= N; ++k) {
    const R mag = R(binomial(N, k)) * hermite_explicit<Digits>(N - k, gg) * hermite_explicit<Digits>(k, yy);
    // i^k e^{-i omega (k + 1/2) t}
    const R angle = acos(R(-1)) / 2 * k - theta * (R(k) + R(0.5));
    const R cr = mag * cos(angle), ci = mag * sin(angle);
    const R ek = om * (R(k) + R(0.5));
    re += cr;
    im += ci;
    ere += ek * cr;
    eim += ek * ci;
  }
  const R gauss = -yy * yy / 2;
  TimeSample s;
  s.log_mag = static_cast<double>(log(sqrt(re * re + im * im)) + gauss);
  s.phase = static_cast<double>(atan2(im, re));
  const R den = re * re + im * im;
  s.energy = {static_cast<double>((ere * re + eim * im) / den), static_cast<double>((eim * re - ere * im) / den)};
  return s;
}

/// Relative distance between two log-polar values given as (log_mag, phase).
inline double log_polar_distance(double lm1, double ph1, double lm2, double ph2) {
  const std::complex<double> r = std::exp(std::complex<double>(lm1 - lm2, ph1 - ph2));
  return std::abs(r - 1.0);
}

}  // namespace oracle
