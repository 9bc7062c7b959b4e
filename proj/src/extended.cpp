#include "superlab/extended.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "superlab/numerics.hpp"

namespace superlab::extended {

namespace {

namespace mp = boost::multiprecision;

template <unsigned Digits>
using Real = mp::number<mp::mpfr_float_backend<Digits>, mp::et_off>;

template <typename R>
LogComplex to_log_complex(const R& re, const R& im) {
  if (re == 0 && im == 0) return LogComplex::zero();
  const R mag = sqrt(re * re + im * im);
  return LogComplex(static_cast<double>(log(mag)), static_cast<double>(atan2(im, re)));
}

template <unsigned Digits>
SpectralResult spectral_sum_impl(const oscillator::OscillatorConfig& config, double x, double t) {
  using R = Real<Digits>;
  const int N = config.N;
  const double omega = config.omega();
  const R s_omega = R(config.scale) * R(omega);
  const R pi = acos(R(-1));
  const R y = sqrt(s_omega) * R(x);

  const std::vector<R> herm = hermite_table<R>(N, R(config.g));
  const std::vector<R> phi = hermite_function_table<R>(N, y);

  // 1/A_n = (s omega/pi)^{-1/4} sqrt(2^n n!) and psi_n = (s omega)^{1/4} phi_n(y).
  const R inv_a0 = pow(s_omega / pi, R(-0.25));
  const R psi_scale = pow(s_omega, R(0.25));

  const double theta = omega * t;
  const R sin_t = sin(R(theta));
  const R cos_t = cos(R(theta));

  R binom = 1;
  R root_fact = 1;  // sqrt(2^n n!)
  R rot_re = 1;     // (i e^{-i theta})^n
  R rot_im = 0;
  R sum_re = 0, sum_im = 0, e_re = 0, e_im = 0;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) {
      binom = binom * R(N - n + 1) / R(n);
      root_fact = root_fact * sqrt(R(2 * n));
      const R re = rot_re * sin_t - rot_im * cos_t;
      const R im = rot_re * cos_t + rot_im * sin_t;
      rot_re = re;
      rot_im = im;
    }
    const R coeff = binom * herm[N - n] * inv_a0 * root_fact;
    const R term = coeff * psi_scale * phi[n];
    const R energy = R(omega) * (R(n) + R(0.5));
    sum_re += term * rot_re;
    sum_im += term * rot_im;
    e_re += energy * term * rot_re;
    e_im += energy * term * rot_im;
  }
  const LogComplex half_phase(0.0, -0.5 * theta);
  SpectralResult out;
  out.value = to_log_complex(sum_re, sum_im) * half_phase;
  out.energy_weighted = to_log_complex(e_re, e_im) * half_phase;
  out.digits = Digits;
  return out;
}

template <unsigned Digits>
LogComplex identity_sum_impl(int N, double a, double b) {
  using R = Real<Digits>;
  const std::vector<R> ha = hermite_table<R>(N, R(a));
  const std::vector<R> hb = hermite_table<R>(N, R(b));
  R binom = 1;
  R re = 0, im = 0;
  for (int k = 0; k <= N; ++k) {
    if (k > 0) binom = binom * R(N - k + 1) / R(k);
    const R term = binom * ha[N - k] * hb[k];
    // i^k
    switch (k % 4) {
      case 0: re += term; break;
      case 1: im += term; break;
      case 2: re -= term; break;
      default: im -= term; break;
    }
  }
  return to_log_complex(re, im);
}

LogComplex identity_sum_at_tier(int N, double a, double b, std::size_t tier) {
  switch (tier) {
    case 0: return identity_sum_impl<kTierDigits[0]>(N, a, b);
    case 1: return identity_sum_impl<kTierDigits[1]>(N, a, b);
    case 2: return identity_sum_impl<kTierDigits[2]>(N, a, b);
    case 3: return identity_sum_impl<kTierDigits[3]>(N, a, b);
    case 4: return identity_sum_impl<kTierDigits[4]>(N, a, b);
    default: return identity_sum_impl<kTierDigits[5]>(N, a, b);
  }
}

bool agree(const LogComplex& a, const LogComplex& b, double tol) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return std::abs(ratio(a, b) - 1.0) < tol;
}

}  // namespace

SpectralResult spectral_sum_at_tier(const oscillator::OscillatorConfig& config, double x, double t,
                                    std::size_t tier) {
  config.validate();
  switch (tier) {
    case 0:
      return spectral_sum_impl<kTierDigits[0]>(config, x, t);
    case 1:
      return spectral_sum_impl<kTierDigits[1]>(config, x, t);
    case 2:
      return spectral_sum_impl<kTierDigits[2]>(config, x, t);
    case 3:
      return spectral_sum_impl<kTierDigits[3]>(config, x, t);
    case 4:
      return spectral_sum_impl<kTierDigits[4]>(config, x, t);
    case 5:
      return spectral_sum_impl<kTierDigits[5]>(config, x, t);
    default:
      throw std::out_of_range("spectral_sum_at_tier: tier index " + std::to_string(tier));
  }
}

SpectralResult spectral_sum(const oscillator::OscillatorConfig& config, double x, double t) {
  constexpr double kAgreement = 1e-13;
  SpectralResult prev = spectral_sum_at_tier(config, x, t, 0);
  for (std::size_t tier = 1; tier < kTierDigits.size(); ++tier) {
    SpectralResult cur = spectral_sum_at_tier(config, x, t, tier);
    if (agree(prev.value, cur.value, kAgreement) && agree(prev.energy_weighted, cur.energy_weighted, kAgreement)) {
      return cur;
    }
    prev = cur;
  }
  throw numerical_error("extended::spectral_sum: no agreement up to " + std::to_string(kTierDigits.back()) +
                        " digits (N=" + std::to_string(config.N) + ", x=" + std::to_string(x) + ")");
}

std::complex<double> hermite_identity_sum(int N, double a, double b) {
  if (N < 0) throw std::invalid_argument("hermite_identity_sum: N must be >= 0");
  constexpr double kAgreement = 1e-15;
  LogComplex prev = identity_sum_at_tier(N, a, b, 0);
  for (std::size_t tier = 1; tier < kTierDigits.size(); ++tier) {
    const LogComplex cur = identity_sum_at_tier(N, a, b, tier);
    if (agree(prev, cur, kAgreement)) return cur.to_complex();
    prev = cur;
  }
  throw numerical_error("extended::hermite_identity_sum: no agreement up to " +
                        std::to_string(kTierDigits.back()) + " digits");
}

}  // namespace superlab::extended
