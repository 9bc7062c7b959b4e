#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "superlab/log_complex.hpp"
#include "superlab/numerics.hpp"

// Local super-observables: weak values <x|O|psi>/<x|psi> of an operator O
// for a band-limited preselection psi and position postselection x.
// hbar = 1.
namespace superlab {

/// Marker returned where the wavefunction vanishes.
inline constexpr double kSingular = std::numeric_limits<double>::quiet_NaN();
inline bool is_singular(double v) { return std::isnan(v); }
inline bool is_singular(std::complex<double> v) { return std::isnan(v.real()) || std::isnan(v.imag()); }

enum class Basis {
  plane_wave,   // e^{ikx}, eigenvalue k of p (hbar = 1)
  oscillator,   // psi_n with mass m and frequency omega, eigenvalue omega (n + 1/2)
  legendre_m0,  // P_l(cos theta), variable theta, eigenvalue l(l+1) of L^2
};

struct BandLimitedState {
  Basis basis = Basis::plane_wave;
  std::vector<LogComplex> coefficients;
  std::vector<double> labels;       // k for plane waves, n for the oscillator, l for Legendre
  std::vector<double> eigenvalues;  // lambda_j
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::pair<double, double> domain;  // interval on which the basis is orthogonal
  double mass = 1.0;                 // oscillator only
  double omega = 1.0;                // oscillator only

  /// Throws std::invalid_argument when a band-limit or non-emptiness invariant fails.
  void validate() const;
  /// Squared norm of basis function j over the domain with the basis measure.
  double basis_norm_sq(std::size_t j) const;
};

/// Plane waves e^{ikx} on a period interval.
BandLimitedState plane_wave_state(std::vector<double> wavenumbers, std::vector<std::complex<double>> coeffs,
                                  std::pair<double, double> period);
/// Oscillator eigenfunctions for mass m and frequency omega.
BandLimitedState oscillator_state(std::vector<int> levels, std::vector<std::complex<double>> coeffs,
                                  double mass = 1.0, double omega = 1.0);
/// Legendre polynomials P_l(cos theta) on theta in [0, pi].
BandLimitedState legendre_state(std::vector<int> degrees, std::vector<std::complex<double>> coeffs);

/// (cos(x/N) + i a sin(x/N))^N expanded into N + 1 plane waves k_j = 1 - 2j/N
/// on the common period (-pi N, pi N).
BandLimitedState superoscillation_state(int N, double a);

enum class DerivativeKind { analytic, spectral, finite_difference };

/// Position-space wavefunction with its first two derivatives.
struct StateEvaluator {
  std::function<std::complex<double>(double)> value;
  std::function<std::complex<double>(double)> d1;
  std::function<std::complex<double>(double)> d2;
  /// Second azimuthal derivative d^2/dphi^2; empty means identically zero (m = 0).
  std::function<std::complex<double>(double)> d2_azimuthal;
  DerivativeKind derivative_kind = DerivativeKind::analytic;
};

/// (cos(x/N) + i a sin(x/N))^N and its derivatives in closed form. The plane-wave
/// expansion of this function cancels by ~|a|^N, so this is the accurate route.
StateEvaluator superoscillation_evaluator(int N, double a);

/// Differentiates each basis function exactly and resums.
StateEvaluator spectral_evaluator(const BandLimitedState& state);

/// Central differences of a value map with step h.
StateEvaluator finite_difference_evaluator(std::function<std::complex<double>(double)> value, double h);

/// <x|O|psi> given the state and the position.
using OperatorApply = std::function<std::complex<double>(const StateEvaluator&, double)>;

/// p = -i d/dx.
OperatorApply momentum_operator();
/// H = -(1/2m) d^2/dx^2 + m omega^2 x^2 / 2.
OperatorApply oscillator_hamiltonian(double mass, double omega);
/// L^2 = -(d^2/dtheta^2 + cot(theta) d/dtheta + csc^2(theta) d^2/dphi^2).
OperatorApply angular_momentum_squared();

/// Im psi'(x)/psi(x); kSingular where |psi(x)| <= zero_tolerance.
double local_wavenumber(const StateEvaluator& state, double x, double zero_tolerance = 0.0);
/// Re psi'(x)/psi(x), the local log-magnitude growth rate; kSingular at zeros.
double supergrowth_rate(const StateEvaluator& state, double x, double zero_tolerance = 0.0);

inline constexpr double kDefaultZeroTolerance = 1e-12;

struct ObservableProfile {
  Eigen::VectorXd grid;
  Eigen::VectorXcd values;  // NaN at singular points
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::vector<bool> super_flags;
  std::vector<bool> singular_flags;
};

/// Sets singular_flags from ln|psi| (|psi| below zero_tolerance times the grid max, or
/// exactly zero) and super_flags from Re values against [lambda_min, lambda_max],
/// widened by a relative 1e-9 rounding slack.
void classify_profile(ObservableProfile& profile, const Eigen::VectorXd& log_abs_psi, double zero_tolerance);

/// values[i] = op(state, x_i) / psi(x_i) with flags populated.
ObservableProfile weak_value_field(const OperatorApply& op, const StateEvaluator& state,
                                   const Eigen::VectorXd& grid, double lambda_min, double lambda_max,
                                   double zero_tolerance = kDefaultZeroTolerance);

struct SumRuleResult {
  double lhs = 0.0;  // int |psi|^2 Re O~ / int |psi|^2
  double rhs = 0.0;  // sum |c_j|^2 |phi_j|^2 lambda_j / sum |c_j|^2 |phi_j|^2
  double tolerance = 0.0;
  bool passed() const { return std::abs(lhs - rhs) < tolerance; }
};

inline constexpr double kSumRuleTolerance = 1e-6;

/// Weighted integral of the real local observable against the spectral
/// expectation. profile.grid must be the rule's nodes.
SumRuleResult sum_rule_check(const BandLimitedState& state, const ObservableProfile& profile,
                             const QuadratureRule& rule);

/// Canonical observable of the basis: p, H, or L^2.
OperatorApply natural_observable(const BandLimitedState& state);

/// Profile of the basis' natural observable on the rule nodes, then the sum rule.
SumRuleResult sum_rule_check(const BandLimitedState& state, const QuadratureRule& rule);

struct GeneratingFunction {
  Eigen::VectorXd chi;
  Eigen::VectorXcd values;           // Z(chi)
  Eigen::VectorXd local_frequency;   // Im Z'(chi)/Z(chi)
};

/// Z(chi) = sum_j c_j e^{i chi lambda_j} <phi|phi_j> / sum_j c_j <phi|phi_j>.
GeneratingFunction generating_function(const BandLimitedState& state,
                                       const std::vector<std::complex<double>>& post_overlaps,
                                       const Eigen::VectorXd& chi_grid);

/// Maximal runs of super points; singular points break runs. Endpoints are grid values.
std::vector<std::pair<double, double>> detect_super_regions(const ObservableProfile& profile);

}  // namespace superlab
