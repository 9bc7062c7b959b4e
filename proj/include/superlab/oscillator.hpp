#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "superlab/log_complex.hpp"
#include "superlab/weak_value.hpp"

// Units throughout: hbar = omega_0 = 1, so energies are in hbar*omega_0,
// times in 1/omega_0, and the mass is m = scale = m*omega_0/hbar.
namespace superlab::oscillator {

enum class FrequencyScaling {
  inverse_N,   // omega_N = omega_0 / N
  inverse_N2,  // omega_N = omega_0 / N^2
};

struct OscillatorConfig {
  int N = 1;
  double g = 0.5;
  FrequencyScaling scaling = FrequencyScaling::inverse_N;
  double scale = 1.0;  // m*omega_0/hbar

  /// Throws std::invalid_argument on N < 0, g <= 0 or scale <= 0.
  void validate() const;

  /// omega_N in units of omega_0 (N = 0 uses omega_0).
  double omega() const;
  double mass() const { return scale; }
  /// sqrt(m omega_N / hbar): converts x to the dimensionless oscillator argument.
  double inverse_length() const;
  double dimensionless(double x) const { return inverse_length() * x; }
  /// hbar omega_N (N + 1/2), the top component energy.
  double max_energy() const { return omega() * (N + 0.5); }
  /// hbar omega_N / 2, the bottom component energy.
  double min_energy() const { return 0.5 * omega(); }
};

/// omega_N = E_max / (hbar (N + 1/2)), the exact form of the inverse_N rule.
double exact_frequency(double max_energy, int N);

struct SequenceState {
  OscillatorConfig config;
  std::vector<LogComplex> coeffs;  // c_n^(N), n = 0..N
};

/// c_n = C(N,n) i^n H_{N-n}(g) / A_n with A_n = (m omega_N/(pi hbar))^{1/4} / sqrt(2^n n!).
SequenceState build_sequence_state(const OscillatorConfig& config);

/// Sum_n c_n psi_n(x). Runs in double with max-factored log-domain summation;
/// when the terms cancel by more than e^12 the sum is redone in extended precision.
LogComplex spectral_sum(const SequenceState& state, double x);

/// The same sum in double only, returning the cancellation depth
/// ln(max term) - ln|sum| alongside.
struct SpectralDouble {
  LogComplex value;
  double cancellation = 0.0;
};
SpectralDouble spectral_sum_double(const SequenceState& state, double x);

/// 2^N exp(-y^2/2) (g + i y)^N with y = sqrt(m omega_N/hbar) x.
LogComplex closed_form(const OscillatorConfig& config, double x);

/// (2g)^N exp(-m omega_0 x^2/(2 N hbar)) exp(i sqrt(m omega_0/hbar) sqrt(N) x / g).
/// Requires inverse_N scaling.
LogComplex large_n_approximant(const OscillatorConfig& config, double x);

/// k_0 = sqrt(m omega_0/hbar) / g.
double limit_wavenumber(const OscillatorConfig& config);

/// Unit-normalized Gaussian-regularized plane wave at finite N
/// (width N sqrt(hbar/(m omega_0)), wavenumber k_0). Requires inverse_N2 scaling.
std::complex<double> limit_state(const OscillatorConfig& config, double x);

/// The N -> infinity pointwise limit exp(i k_0 x).
std::complex<double> limit_plane_wave(const OscillatorConfig& config, double x);

/// Sup over the grid of |h_N(x)/h_N(0) - exp(-s x^2/(2N^2) + i k_0 x)|.
double limit_deviation(const OscillatorConfig& config, const Eigen::VectorXd& grid);

/// Brute-force Sum_k C(N,k) i^k H_{N-k}(a) H_k(b), each term built separately (extended precision).
std::complex<double> hermite_identity_sum(int N, double a, double b);
/// 2^N (a + i b)^N.
std::complex<double> hermite_identity_rhs(int N, double a, double b);

/// First and second x-derivatives of ln h_N from the closed form.
struct LogDerivatives {
  std::complex<double> d1;
  std::complex<double> d2;
};
LogDerivatives log_derivatives(const OscillatorConfig& config, double x);

/// Local energy -(hbar^2/2m) h''/h + m omega_N^2 x^2 / 2 from the closed form.
std::complex<double> local_energy(const OscillatorConfig& config, double x);

/// Local-energy profile with band [omega_N/2, omega_N (N+1/2)]. The closed form has
/// no real zeros and is evaluated in log-polar form, so the zero tolerance defaults to 0.
ObservableProfile local_energy_profile(const OscillatorConfig& config, const Eigen::VectorXd& grid,
                                       double zero_tolerance = 0.0);

struct SuperRegion {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double superenergy = 0.0;     // hbar omega_0 N / (2 g^2)
  double superwavenumber = 0.0;  // sqrt(m omega_0/hbar) sqrt(N) / g
};

/// |x| < sqrt(N) g sqrt(hbar/(m omega_0)). Requires inverse_N scaling.
SuperRegion super_region(const OscillatorConfig& config);

}  // namespace superlab::oscillator
