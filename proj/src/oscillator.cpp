#include "superlab/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "superlab/extended.hpp"
#include "superlab/numerics.hpp"

namespace superlab::oscillator {

namespace {

using cd = std::complex<double>;

// Beyond e^12 of cancellation the double sum keeps fewer than ~10 digits.
constexpr double kMaxDoubleCancellation = 12.0;

void require_scaling(const OscillatorConfig& config, FrequencyScaling want, const char* who) {
  if (config.scaling != want) {
    throw std::invalid_argument(std::string(who) + ": requires the " +
                                (want == FrequencyScaling::inverse_N ? "inverse_N" : "inverse_N2") +
                                " frequency scaling");
  }
}

}  // namespace

void OscillatorConfig::validate() const {
  if (N < 0) throw std::invalid_argument("OscillatorConfig: N must be >= 0");
  if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("OscillatorConfig: g must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("OscillatorConfig: scale must be positive");
}

double OscillatorConfig::omega() const {
  if (N == 0) return 1.0;
  const double n = N;
  return scaling == FrequencyScaling::inverse_N ? 1.0 / n : 1.0 / (n * n);
}

double OscillatorConfig::inverse_length() const { return std::sqrt(scale * omega()); }

double exact_frequency(double max_energy, int N) {
  if (N < 0) throw std::invalid_argument("exact_frequency: N must be >= 0");
  return max_energy / (N + 0.5);
}

SequenceState build_sequence_state(const OscillatorConfig& config) {
  config.validate();
  const int N = config.N;
  const auto herm = hermite_log_table(N, config.g);
  // ln A_n = (1/4) ln(m omega_N / (pi hbar)) - (1/2)(n ln 2 + ln n!)
  const double log_a0 = 0.25 * std::log(config.scale * config.omega() / std::numbers::pi);

  SequenceState state;
  state.config = config;
  state.coeffs.reserve(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    const double log_a = log_a0 - 0.5 * (n * std::numbers::ln2 + std::lgamma(n + 1.0));
    const LogComplex binom(log_binomial(N, n), 0.5 * std::numbers::pi * (n % 4));
    state.coeffs.push_back(binom * herm[N - n].scaled(-log_a));
  }
  return state;
}

SpectralDouble spectral_sum_double(const SequenceState& state, double x) {
  const auto& cfg = state.config;
  const double y = cfg.dimensionless(x);
  const auto phi = hermite_function_log_table(cfg.N, y);
  const double log_amp = 0.25 * std::log(cfg.scale * cfg.omega());

  std::vector<LogComplex> terms;
  terms.reserve(phi.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < phi.size(); ++n) {
    terms.push_back((state.coeffs[n] * phi[n]).scaled(log_amp));
    top = std::max(top, terms.back().log_mag());
  }
  SpectralDouble out;
  out.value = log_sum(terms);
  out.cancellation = out.value.is_zero() ? std::numeric_limits<double>::infinity() : top - out.value.log_mag();
  return out;
}

LogComplex spectral_sum(const SequenceState& state, double x) {
  const SpectralDouble d = spectral_sum_double(state, x);
  if (d.cancellation <= kMaxDoubleCancellation) return d.value;
  return extended::spectral_sum(state.config, x, 0.0).value;
}

LogComplex closed_form(const OscillatorConfig& config, double x) {
  config.validate();
  const double y = config.dimensionless(x);
  const double g = config.g;
  const double N = config.N;
  const double log_mag = N * std::log(2.0 * g) - 0.5 * y * y + 0.5 * N * std::log1p((y / g) * (y / g));
  return LogComplex(log_mag, N * std::atan2(y, g));
}

std::complex<double> hermite_identity_sum(int N, double a, double b) {
  return extended::hermite_identity_sum(N, a, b);
}

std::complex<double> hermite_identity_rhs(int N, double a, double b) {
  if (N < 0) throw std::invalid_argument("hermite_identity_rhs: N must be >= 0");
  return std::pow(2.0, N) * std::pow(cd(a, b), N);
}

LogComplex large_n_approximant(const OscillatorConfig& config, double x) {
  config.validate();
  require_scaling(config, FrequencyScaling::inverse_N, "large_n_approximant");
  const double N = std::max(config.N, 1);
  const double s = config.scale;
  const double log_mag = N * std::log(2.0 * config.g) - s * x * x / (2.0 * N);
  return LogComplex(log_mag, std::sqrt(s) * std::sqrt(N) * x / config.g);
}

double limit_wavenumber(const OscillatorConfig& config) {
  config.validate();
  return std::sqrt(config.scale) / config.g;
}

std::complex<double> limit_state(const OscillatorConfig& config, double x) {
  config.validate();
  require_scaling(config, FrequencyScaling::inverse_N2, "limit_state");
  const double N = std::max(config.N, 1);
  const double s = config.scale;
  const double amp = std::pow(s / (std::numbers::pi * N * N), 0.25);
  return amp * std::exp(cd(-s * x * x / (2.0 * N * N), limit_wavenumber(config) * x));
}

std::complex<double> limit_plane_wave(const OscillatorConfig& config, double x) {
  return std::polar(1.0, limit_wavenumber(config) * x);
}

double limit_deviation(const OscillatorConfig& config, const Eigen::VectorXd& grid) {
  require_scaling(config, FrequencyScaling::inverse_N2, "limit_deviation");
  const double N = std::max(config.N, 1);
  const double s = config.scale;
  const LogComplex origin = closed_form(config, 0.0);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const cd h = ratio(closed_form(config, x), origin);
    const cd ref = std::exp(cd(-s * x * x / (2.0 * N * N), limit_wavenumber(config) * x));
    worst = std::max(worst, std::abs(h - ref));
  }
  return worst;
}

LogDerivatives log_derivatives(const OscillatorConfig& config, double x) {
  config.validate();
  const double kappa = config.inverse_length();
  const double y = kappa * x;
  const double N = config.N;
  const cd b(config.g, y);  // g + i y
  const cd dy1 = -y + cd(0.0, N) / b;
  const cd dy2 = -1.0 + N / (b * b);
  return {kappa * dy1, kappa * kappa * dy2};
}

std::complex<double> local_energy(const OscillatorConfig& config, double x) {
  const LogDerivatives ld = log_derivatives(config, x);
  const double m = config.mass();
  const double w = config.omega();
  return -(ld.d2 + ld.d1 * ld.d1) / (2.0 * m) + 0.5 * m * w * w * x * x;
}

ObservableProfile local_energy_profile(const OscillatorConfig& config, const Eigen::VectorXd& grid,
                                       double zero_tolerance) {
  config.validate();
  ObservableProfile p;
  p.grid = grid;
  p.lambda_min = config.min_energy();
  p.lambda_max = config.max_energy();
  p.values.resize(grid.size());
  Eigen::VectorXd log_abs(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    p.values[i] = local_energy(config, grid[i]);
    log_abs[i] = closed_form(config, grid[i]).log_mag();
  }
  classify_profile(p, log_abs, zero_tolerance);
  return p;
}

SuperRegion super_region(const OscillatorConfig& config) {
  config.validate();
  require_scaling(config, FrequencyScaling::inverse_N, "super_region");
  const double N = config.N;
  const double half = std::sqrt(N) * config.g / std::sqrt(config.scale);
  SuperRegion r;
  r.x_lo = -half;
  r.x_hi = half;
  r.superenergy = N / (2.0 * config.g * config.g);
  r.superwavenumber = std::sqrt(config.scale) * std::sqrt(N) / config.g;
  return r;
}

}  // namespace superlab::oscillator
