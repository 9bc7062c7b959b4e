#include "superlab/log_complex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace superlab {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double canonical_phase(double phase) {
  if (!std::isfinite(phase)) return phase;
  double r = std::remainder(phase, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

LogComplex::LogComplex(double log_mag, double phase)
    : log_mag_(log_mag), phase_(log_mag == kNegInf ? 0.0 : canonical_phase(phase)) {}

LogComplex LogComplex::from_complex(std::complex<double> z) {
  if (z == 0.0) return zero();
  return LogComplex(std::log(std::abs(z)), std::arg(z));
}

LogComplex LogComplex::from_real(double x) {
  if (x == 0.0) return zero();
  return LogComplex(std::log(std::fabs(x)), x < 0 ? std::numbers::pi : 0.0);
}

LogComplex LogComplex::exp(std::complex<double> w) { return LogComplex(w.real(), w.imag()); }

std::complex<double> LogComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mag_), phase_);
}

LogComplex LogComplex::conj() const { return LogComplex(log_mag_, -phase_); }

LogComplex LogComplex::pow(double p) const {
  if (is_zero()) {
    return p == 0.0 ? one() : zero();
  }
  return LogComplex(p * log_mag_, p * phase_);
}

LogComplex LogComplex::scaled(double delta) const {
  if (is_zero()) return *this;
  return LogComplex(log_mag_ + delta, phase_);
}

LogComplex LogComplex::operator-() const {
  if (is_zero()) return *this;
  return LogComplex(log_mag_, phase_ + std::numbers::pi);
}

LogComplex& LogComplex::operator*=(const LogComplex& rhs) {
  if (is_zero() || rhs.is_zero()) {
    *this = zero();
    return *this;
  }
  *this = LogComplex(log_mag_ + rhs.log_mag_, phase_ + rhs.phase_);
  return *this;
}

LogComplex& LogComplex::operator/=(const LogComplex& rhs) {
  if (rhs.is_zero()) {
    *this = LogComplex(std::numeric_limits<double>::infinity(), 0.0);
    return *this;
  }
  if (is_zero()) return *this;
  *this = LogComplex(log_mag_ - rhs.log_mag_, phase_ - rhs.phase_);
  return *this;
}

LogComplex& LogComplex::operator+=(const LogComplex& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) {
    *this = rhs;
    return *this;
  }
  const double gap = rhs.log_mag_ - log_mag_;
  if (gap > kLogAbsorbGap) {
    *this = rhs;
    return *this;
  }
  if (gap < -kLogAbsorbGap) return *this;

  const bool self_larger = gap <= 0.0;
  const LogComplex& big = self_larger ? *this : rhs;
  const LogComplex& small = self_larger ? rhs : *this;
  const std::complex<double> r =
      std::polar(1.0, big.phase_) + std::polar(std::exp(small.log_mag_ - big.log_mag_), small.phase_);
  if (r == 0.0) {
    *this = zero();
    return *this;
  }
  *this = LogComplex(big.log_mag_ + std::log(std::abs(r)), std::arg(r));
  return *this;
}

LogComplex& LogComplex::operator-=(const LogComplex& rhs) { return *this += -rhs; }

LogComplex log_sum(std::span<const LogComplex> terms) {
  double top = kNegInf;
  for (const auto& t : terms) top = std::max(top, t.log_mag());
  if (top == kNegInf) return LogComplex::zero();

  std::complex<double> acc{0.0, 0.0};
  for (const auto& t : terms) {
    const double d = t.log_mag() - top;
    if (d < -kLogAbsorbGap) continue;
    acc += std::polar(std::exp(d), t.phase());
  }
  return LogComplex::from_complex(acc).scaled(top);
}

std::complex<double> ratio(const LogComplex& a, const LogComplex& b) { return (a / b).to_complex(); }

}  // namespace superlab
