#include "superlab/rotor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace superlab::rotor {

void RotorState::validate() const {
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("RotorState: c must be real and >= 0");
  if (!(mass_length_sq > 0.0)) throw std::invalid_argument("RotorState: m a^2 must be positive");
}

double local_L2(const RotorState& state, double theta) {
  state.validate();
  const double u = std::cos(theta);
  const double denom = 1.0 + state.c * u;
  if (std::fabs(denom) < kRotorZeroTolerance) return kSingular;
  return 2.0 * state.c * u / denom;
}

BandLimitedState rotor_band_state(const RotorState& state) {
  state.validate();
  return legendre_state({0, 1}, {1.0, state.c});
}

double local_L2_generic(const RotorState& state, double theta) {
  const StateEvaluator ev = spectral_evaluator(rotor_band_state(state));
  const std::complex<double> psi = ev.value(theta);
  if (std::abs(psi) < kRotorZeroTolerance) return kSingular;
  return (angular_momentum_squared()(ev, theta) / psi).real();
}

double rotor_time_frequency(const RotorState& state, double theta) {
  const double l2 = local_L2(state, theta);
  if (is_singular(l2)) return kSingular;
  return l2 / (2.0 * state.mass_length_sq);
}

std::complex<double> rotor_time_phase(const RotorState& state, double theta, double t) {
  const double freq = rotor_time_frequency(state, theta);
  if (is_singular(freq)) return {kSingular, kSingular};
  return std::polar(1.0, -freq * t);
}

std::complex<double> rotor_exact_evolution(const RotorState& state, double theta, double t) {
  state.validate();
  const double p1 = std::cos(theta);
  return std::polar(1.0, -state.level_energy(0) * t) + state.c * p1 * std::polar(1.0, -state.level_energy(1) * t);
}

std::complex<double> rotor_exact_local_energy(const RotorState& state, double theta, double t) {
  const std::complex<double> psi = rotor_exact_evolution(state, theta, t);
  if (std::abs(psi) < kRotorZeroTolerance) return {kSingular, kSingular};
  const double p1 = std::cos(theta);
  const std::complex<double> h_psi = state.level_energy(0) * std::polar(1.0, -state.level_energy(0) * t) +
                                     state.level_energy(1) * state.c * p1 * std::polar(1.0, -state.level_energy(1) * t);
  return h_psi / psi;
}

Eigen::VectorXd theta_grid(int n) {
  if (n < 1) throw std::invalid_argument("theta_grid: need at least one point");
  const double step = std::numbers::pi / n;
  Eigen::VectorXd grid(n);
  for (int i = 0; i < n; ++i) grid[i] = (i + 0.5) * step;
  return grid;
}

ObservableProfile local_L2_profile(const RotorState& state, const Eigen::VectorXd& grid) {
  const BandLimitedState band = rotor_band_state(state);
  return weak_value_field(angular_momentum_squared(), spectral_evaluator(band), grid, band.lambda_min,
                          band.lambda_max, kDefaultZeroTolerance);
}

}  // namespace superlab::rotor
