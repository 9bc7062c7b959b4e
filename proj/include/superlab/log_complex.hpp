#pragma once

#include <complex>
#include <limits>
#include <span>

namespace superlab {

/// Wraps an angle into (-pi, pi].
double canonical_phase(double phase);

/// Complex number stored as (natural log of magnitude, phase).
///
/// Covers magnitudes far outside the double range (the oscillator
/// coefficients reach exp(+-3000) at N = 1000). A log_mag of -infinity
/// encodes zero; the phase of zero is 0.
class LogComplex {
 public:
  constexpr LogComplex() = default;
  LogComplex(double log_mag, double phase);

  static LogComplex zero() { return {}; }
  static LogComplex one() { return LogComplex(0.0, 0.0); }
  static LogComplex from_complex(std::complex<double> z);
  static LogComplex from_real(double x);
  /// exp(w) for complex w.
  static LogComplex exp(std::complex<double> w);

  double log_mag() const { return log_mag_; }
  double phase() const { return phase_; }
  bool is_zero() const { return log_mag_ == -std::numeric_limits<double>::infinity(); }

  /// Ordinary complex value; overflows to inf / underflows to 0 outside the double range.
  std::complex<double> to_complex() const;
  /// Principal logarithm; -inf real part for zero.
  std::complex<double> log() const { return {log_mag_, phase_}; }

  LogComplex conj() const;
  /// Principal power z^p; for integer p this is the exact repeated product.
  LogComplex pow(double p) const;
  /// Multiplies the magnitude by exp(delta).
  LogComplex scaled(double delta) const;

  LogComplex operator-() const;
  LogComplex& operator*=(const LogComplex& rhs);
  LogComplex& operator/=(const LogComplex& rhs);
  LogComplex& operator+=(const LogComplex& rhs);
  LogComplex& operator-=(const LogComplex& rhs);

  friend LogComplex operator*(LogComplex lhs, const LogComplex& rhs) { return lhs *= rhs; }
  friend LogComplex operator/(LogComplex lhs, const LogComplex& rhs) { return lhs /= rhs; }
  friend LogComplex operator+(LogComplex lhs, const LogComplex& rhs) { return lhs += rhs; }
  friend LogComplex operator-(LogComplex lhs, const LogComplex& rhs) { return lhs -= rhs; }

  friend bool operator==(const LogComplex&, const LogComplex&) = default;

 private:
  double log_mag_ = -std::numeric_limits<double>::infinity();
  double phase_ = 0.0;
};

/// Beyond this log-magnitude gap the smaller addend is dropped exactly.
inline constexpr double kLogAbsorbGap = 800.0;

/// Sum of many terms: the largest magnitude is factored out, the scaled
/// residuals are accumulated in native complex, and the factor restored.
LogComplex log_sum(std::span<const LogComplex> terms);

/// Ratio a/b as an ordinary complex number (both may be far outside the
/// double range as long as the ratio is representable).
std::complex<double> ratio(const LogComplex& a, const LogComplex& b);

}  // namespace superlab
