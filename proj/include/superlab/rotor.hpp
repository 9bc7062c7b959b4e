#pragma once

#include <complex>

#include <Eigen/Dense>

#include "superlab/weak_value.hpp"

// Rigid rotor in the two-level m = 0 state |psi> ~ |0,0> + c|1,0>, written with
// bare Legendre polynomials: psi(theta) = 1 + c cos(theta). hbar = 1.
namespace superlab::rotor {

struct RotorState {
  double c = 0.5;                // real mixing amplitude, c >= 0
  double mass_length_sq = 1.0;   // m a^2

  void validate() const;
  /// E_l = l(l+1) / (2 m a^2).
  double level_energy(int l) const { return l * (l + 1.0) / (2.0 * mass_length_sq); }
};

inline constexpr double kRotorZeroTolerance = 1e-12;

/// L~^2/hbar^2 = 2c cos(theta) / (1 + c cos(theta)); kSingular where 1 + c cos(theta) vanishes.
double local_L2(const RotorState& state, double theta);

/// The same quantity through the generic weak-value machinery applied to
/// the L^2 differential operator on P_0 + c P_1.
double local_L2_generic(const RotorState& state, double theta);

/// Approximate post-selected phase exp(-i t hbar/(2ma^2) L~^2/hbar^2).
std::complex<double> rotor_time_phase(const RotorState& state, double theta, double t);

/// i d/dt ln of the phase factor, i.e. L~^2 hbar / (2 m a^2).
double rotor_time_frequency(const RotorState& state, double theta);

/// Exact unnormalized psi(theta, t) = P_0 e^{-i E_0 t} + c P_1(cos theta) e^{-i E_1 t}.
std::complex<double> rotor_exact_evolution(const RotorState& state, double theta, double t);

/// i d/dt ln psi(theta, t) of the exact evolution.
std::complex<double> rotor_exact_local_energy(const RotorState& state, double theta, double t);

/// The band-limited state behind the example.
BandLimitedState rotor_band_state(const RotorState& state);

/// theta grid of n points over (0, pi) offset from both poles by half a step.
Eigen::VectorXd theta_grid(int n);

/// Local L^2 profile (generic route) on the grid with band [0, 2].
ObservableProfile local_L2_profile(const RotorState& state, const Eigen::VectorXd& grid);

}  // namespace superlab::rotor
