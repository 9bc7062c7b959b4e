#include "superlab/energy_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace superlab::energy {

namespace {

using oscillator::OscillatorConfig;

// ln|h_N|^2 at dimensionless y.
double log_density(const OscillatorConfig& c, double y) {
  return 2.0 * (c.N * std::log(2.0 * c.g) - 0.5 * y * y + 0.5 * c.N * std::log1p((y / c.g) * (y / c.g)));
}

struct WindowIntegral {
  double log_norm = 0.0;  // ln int |h|^2 dy
  double mean_re = 0.0;   // int |h|^2 Re E~ / int |h|^2
  double mean_im = 0.0;
};

WindowIntegral integrate(const OscillatorConfig& c, double y_lo, double y_hi, long long panels, bool with_energy) {
  const QuadratureRule rule = composite_quadrature_panels(y_lo, y_hi, panels);
  const double kappa = c.inverse_length();
  Eigen::VectorXd logs(rule.size());
  for (Eigen::Index i = 0; i < rule.size(); ++i) logs[i] = log_density(c, rule.nodes[i]);
  const double top = logs.maxCoeff();

  double norm = 0.0, re = 0.0, im = 0.0;
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const double w = rule.weights[i] * std::exp(logs[i] - top);
    norm += w;
    if (with_energy) {
      const std::complex<double> e = oscillator::local_energy(c, rule.nodes[i] / kappa);
      re += w * e.real();
      im += w * e.imag();
    }
  }
  WindowIntegral out;
  out.log_norm = top + std::log(norm);
  out.mean_re = re / norm;
  out.mean_im = im / norm;
  return out;
}

}  // namespace

double spectral_energy(const oscillator::SequenceState& state) {
  const auto& coeffs = state.coeffs;
  if (coeffs.empty()) throw std::invalid_argument("spectral_energy: empty state");
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& c : coeffs) top = std::max(top, 2.0 * c.log_mag());
  const double omega = state.config.omega();
  double num = 0.0, den = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    const double w = std::exp(2.0 * coeffs[n].log_mag() - top);
    num += w * omega * (n + 0.5);
    den += w;
  }
  return num / den;
}

double full_line_half_width(int N) { return std::sqrt(2.0 * N + 1.0) + 10.0; }

EnergyReport windowed_energy(const OscillatorConfig& config, double L, int nodes_per_unit) {
  config.validate();
  if (!(L > 0.0)) throw std::domain_error("windowed_energy: L must be positive");
  const double kappa = config.inverse_length();
  const double y_win = kappa * L;
  const double y_full = full_line_half_width(config.N);

  const long long panels = panel_count(-y_win, y_win, nodes_per_unit);
  const WindowIntegral base = integrate(config, -y_win, y_win, panels, true);
  const WindowIntegral fine = integrate(config, -y_win, y_win, 2 * panels, true);
  const double change = std::abs(fine.mean_re - base.mean_re) / std::max(std::abs(fine.mean_re), 1e-300);
  if (!(change < kWindowSelfCheck)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "windowed_energy: order doubling changed the result by " << change << " (N=" << config.N
        << ", g=" << config.g << ", L=" << L << ", panels=" << panels << ", E=" << base.mean_re << ")";
    throw numerical_error(msg.str());
  }

  const long long full_panels = panel_count(-y_full, y_full, nodes_per_unit);
  const WindowIntegral full = integrate(config, -y_full, y_full, full_panels, false);

  EnergyReport r;
  r.N = config.N;
  r.g = config.g;
  r.spectral_energy = spectral_energy(oscillator::build_sequence_state(config));
  r.windowed_energy = base.mean_re;
  r.window = {-L, L};
  r.log_postselection_prob = std::min(0.0, base.log_norm - full.log_norm);
  r.postselection_prob = std::exp(r.log_postselection_prob);
  r.bound = config.max_energy();
  r.imaginary_residue = std::abs(base.mean_im) / std::max(std::abs(base.mean_re), 1e-300);
  r.quadrature_change = change;

  // Gaussian tail beyond y_full on both sides: f(Y) / |d ln f / dy|.
  const double g2 = config.g * config.g;
  const double rate = std::abs(-2.0 * y_full + 2.0 * config.N * y_full / (g2 + y_full * y_full));
  r.tail_bound = 2.0 * std::exp(log_density(config, y_full) - full.log_norm) / rate;
  r.mimicry_regime = L <= config.g * std::sqrt(config.N / config.scale);
  return r;
}

std::vector<EnergyReport> mimicry_sweep(const std::vector<double>& g_values, int N_max, double L,
                                        oscillator::FrequencyScaling scaling, double scale, int nodes_per_unit) {
  if (N_max < 1) throw std::invalid_argument("mimicry_sweep: N_max must be >= 1");
  std::vector<EnergyReport> out;
  out.reserve(g_values.size() * static_cast<std::size_t>(N_max));
  for (double g : g_values) {
    for (int N = 1; N <= N_max; ++N) {
      OscillatorConfig c;
      c.N = N;
      c.g = g;
      c.scaling = scaling;
      c.scale = scale;
      out.push_back(windowed_energy(c, L, nodes_per_unit));
    }
  }
  return out;
}

}  // namespace superlab::energy
