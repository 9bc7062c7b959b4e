#pragma once

#include <utility>
#include <vector>

#include "superlab/numerics.hpp"
#include "superlab/oscillator.hpp"

// Spectral versus windowed (postselected) energy of the oscillator sequence.
// Energies are in units of hbar*omega_0.
namespace superlab::energy {

struct EnergyReport {
  int N = 0;
  double g = 0.0;
  double spectral_energy = 0.0;
  double windowed_energy = 0.0;
  std::pair<double, double> window;
  double postselection_prob = 0.0;
  double log_postselection_prob = 0.0;  // kept separately; the probability underflows at large N
  double bound = 0.0;                   // hbar omega_N (N + 1/2)
  double imaginary_residue = 0.0;       // |Im| / |Re| of the windowed numerator
  double quadrature_change = 0.0;       // relative change of windowed_energy under order doubling
  double tail_bound = 0.0;              // relative mass estimate beyond the full-line window
  bool mimicry_regime = true;           // L <= g sqrt(hbar N / (m omega_0))
};

/// Sum_n |c_n|^2 (n + 1/2) omega_N / Sum_n |c_n|^2, summed from n = 0 with max-factored weights.
double spectral_energy(const oscillator::SequenceState& state);

/// Relative tolerance of the order-doubling self-check in windowed_energy.
inline constexpr double kWindowSelfCheck = 1e-8;

/// Half-width in y of the "full line" used for the postselection denominator:
/// the highest component's turning point sqrt(2N+1) plus ten Gaussian widths.
double full_line_half_width(int N);

/// Re int_{-L}^{L} |h_N|^2 E~(x) dx / int_{-L}^{L} |h_N|^2 dx with the analytic local energy.
/// nodes_per_unit is the composite Gauss-Legendre density per unit of y. Throws
/// std::domain_error for L <= 0 and numerical_error when order doubling changes the
/// result by more than kWindowSelfCheck.
EnergyReport windowed_energy(const oscillator::OscillatorConfig& config, double L,
                             int nodes_per_unit = kDefaultNodesPerUnit);

/// Reports for N = 1..N_max at each g, ordered g outer, N inner.
std::vector<EnergyReport> mimicry_sweep(const std::vector<double>& g_values, int N_max, double L,
                                        oscillator::FrequencyScaling scaling = oscillator::FrequencyScaling::inverse_N2,
                                        double scale = 1.0, int nodes_per_unit = kDefaultNodesPerUnit);

}  // namespace superlab::energy
