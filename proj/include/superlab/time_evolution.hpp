#pragma once

#include <complex>
#include <vector>

#include "superlab/log_complex.hpp"
#include "superlab/numerics.hpp"
#include "superlab/oscillator.hpp"

// Time-evolved oscillator sequence h_N(x, t) = Sum_n c_n e^{-i omega_N (n + 1/2) t} psi_n(x).
// Times are in 1/omega_0.
//
// The sum is evaluated in closed form: with w = i e^{-i omega_N t},
//   Sum_k C(N,k) w^k H_{N-k}(g) H_k(y) = Q_N,
//   Q_{n+1} = 2X Q_n - 2n K Q_{n-1},  X = g + w y,  K = 1 + w^2,
// so h_N(x, t) = e^{-y^2/2 - i omega_N t/2} Q_N. This is the exact spectral sum,
// not a time-stepper, and costs O(N) per point in double precision.
namespace superlab::time_evolution {

struct TimeEvolvedSample {
  double x = 0.0;
  double t = 0.0;
  LogComplex value;
  std::complex<double> local_time_energy;
};

/// h_N(x, t).
LogComplex hN_time(const oscillator::OscillatorConfig& config, double x, double t);
LogComplex hN_time(const oscillator::SequenceState& state, double x, double t);

/// i d_t h / h from the exact time derivative; kSingular at zeros of h.
std::complex<double> local_time_energy(const oscillator::OscillatorConfig& config, double x, double t);
std::complex<double> local_time_energy(const oscillator::SequenceState& state, double x, double t);

TimeEvolvedSample evolve(const oscillator::SequenceState& state, double x, double t);

/// ln int |h_N(x, t)|^2 dx over the full-line window.
double log_norm(const oscillator::OscillatorConfig& config, double t, int nodes_per_unit = kDefaultNodesPerUnit);

/// int |h|^2 Re(i d_t h / h) dx / int |h|^2 dx over the full-line window.
double averaged_local_time_energy(const oscillator::OscillatorConfig& config, double t,
                                  int nodes_per_unit = kDefaultNodesPerUnit);

/// h_N to first order in t (inverse_N2 scaling, N >= 1), z = sqrt(m omega_0/hbar) x / N:
/// e^{-z^2/2 - i omega_N t/2} [2^N B^N + (t/N) 2^{N-1} (2 z B^{N-1} - i (N-1) B^{N-2})], B = g + i z.
LogComplex first_order_approx(const oscillator::OscillatorConfig& config, double x, double t);

/// ln(N! / ((N-2n)! N^{2n})), which tends to -2n^2/N.
double resummed_log_prefactor(int N, int n);

/// e^{-z^2/2} 2^N B^N Sum_{n=0}^{n_terms} N!/(n! (N-2n)! N^{2n}) (-i t/(2 B^2))^n
/// (inverse_N2 scaling). Throws std::domain_error when n_terms > N/2.
LogComplex resummed_series(const oscillator::OscillatorConfig& config, double x, double t, int n_terms);

/// (2g)^N exp(-z^2/2 + i z N/g - i t/(2 g^2)) (inverse_N2 scaling).
std::complex<double> plane_wave_approx(const oscillator::OscillatorConfig& config, double x, double t);
/// True when |z| < g and |t| < 2 g^2, where plane_wave_approx is meant to hold.
bool plane_wave_regime(const oscillator::OscillatorConfig& config, double x, double t);
/// omega_0 / (2 g^2), the superenergy in time.
double plane_wave_frequency(const oscillator::OscillatorConfig& config);
/// sqrt(hbar omega_0 / m) / (2g).
double plane_wave_phase_velocity(const oscillator::OscillatorConfig& config);

/// h_N(0, t) / h_N(0, 0) on the grid, with h_N(0, 0) = (2g)^N (inverse_N2 scaling).
std::vector<std::complex<double>> fig5_trace(const oscillator::OscillatorConfig& config,
                                             const std::vector<double>& t_grid);

}  // namespace superlab::time_evolution
