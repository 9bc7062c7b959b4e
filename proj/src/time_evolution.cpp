#include "superlab/time_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "superlab/energy_analysis.hpp"
#include "superlab/weak_value.hpp"

namespace superlab::time_evolution {

namespace {

using cd = std::complex<double>;
using oscillator::FrequencyScaling;
using oscillator::OscillatorConfig;

constexpr double kRescaleAbove = 1e150;
constexpr double kRescaleBelow = 1e-150;

// Q_N, Q_{N-1}, Q_{N-2} sharing the factor exp(log_scale).
struct QTriple {
  double log_scale = 0.0;
  cd q{1.0, 0.0};
  cd q1{0.0, 0.0};
  cd q2{0.0, 0.0};
};

QTriple q_recurrence(int N, cd X, cd K) {
  QTriple r;
  if (N == 0) return r;
  cd prev2 = 0.0;
  cd prev = 1.0;
  cd cur = 2.0 * X;
  for (int n = 1; n < N; ++n) {
    const cd next = 2.0 * X * cur - 2.0 * n * K * prev;
    prev2 = prev;
    prev = cur;
    cur = next;
    const double big = std::max(std::abs(cur), std::abs(prev));
    if (big > kRescaleAbove || (big < kRescaleBelow && big > 0.0)) {
      const double inv = 1.0 / big;
      cur *= inv;
      prev *= inv;
      prev2 *= inv;
      r.log_scale += std::log(big);
    }
  }
  r.q = cur;
  r.q1 = prev;
  r.q2 = prev2;
  return r;
}

struct Evaluation {
  LogComplex value;
  cd energy;
};

Evaluation evaluate(const OscillatorConfig& c, double x, double t) {
  const double y = c.dimensionless(x);
  const double omega = c.omega();
  const double theta = omega * t;
  const cd w = cd(0.0, 1.0) * std::polar(1.0, -theta);
  const cd X = c.g + w * y;
  // 1 + w^2 = 2i sin(theta) e^{-i theta}, written to avoid cancellation near t = 0.
  const cd K = cd(0.0, 2.0 * std::sin(theta)) * std::polar(1.0, -theta);
  const QTriple q = q_recurrence(c.N, X, K);

  Evaluation out;
  out.value = LogComplex::from_complex(q.q) * LogComplex(q.log_scale - 0.5 * y * y, -0.5 * theta);
  if (q.q == cd(0.0, 0.0)) {
    out.energy = cd(kSingular, kSingular);
    return out;
  }
  const double N = c.N;
  const cd bracket = 2.0 * N * w * y * q.q1 - 2.0 * N * (N - 1.0) * w * w * q.q2;
  out.energy = 0.5 * omega + omega * bracket / q.q;
  return out;
}

void require_inverse_n2(const OscillatorConfig& c, const char* who) {
  c.validate();
  if (c.scaling != FrequencyScaling::inverse_N2) {
    throw std::invalid_argument(std::string(who) + ": requires the inverse_N2 frequency scaling");
  }
  if (c.N < 1) throw std::domain_error(std::string(who) + ": requires N >= 1");
}

// z = sqrt(m omega_0/hbar) x / N.
double z_of(const OscillatorConfig& c, double x) { return std::sqrt(c.scale) * x / c.N; }

}  // namespace

LogComplex hN_time(const OscillatorConfig& config, double x, double t) {
  config.validate();
  return evaluate(config, x, t).value;
}

LogComplex hN_time(const oscillator::SequenceState& state, double x, double t) {
  return hN_time(state.config, x, t);
}

std::complex<double> local_time_energy(const OscillatorConfig& config, double x, double t) {
  config.validate();
  return evaluate(config, x, t).energy;
}

std::complex<double> local_time_energy(const oscillator::SequenceState& state, double x, double t) {
  return local_time_energy(state.config, x, t);
}

TimeEvolvedSample evolve(const oscillator::SequenceState& state, double x, double t) {
  state.config.validate();
  const Evaluation e = evaluate(state.config, x, t);
  return {x, t, e.value, e.energy};
}

namespace {

struct TimeIntegral {
  double log_norm = 0.0;
  double mean_energy = 0.0;
};

TimeIntegral integrate_full_line(const OscillatorConfig& c, double t, int nodes_per_unit, bool with_energy) {
  c.validate();
  const double Y = energy::full_line_half_width(c.N);
  const QuadratureRule rule = composite_quadrature(-Y, Y, nodes_per_unit);
  const double kappa = c.inverse_length();
  std::vector<Evaluation> evals;
  evals.reserve(rule.size());
  double top = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    evals.push_back(evaluate(c, rule.nodes[i] / kappa, t));
    top = std::max(top, 2.0 * evals.back().value.log_mag());
  }
  double norm = 0.0, energy = 0.0;
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const Evaluation& e = evals[static_cast<std::size_t>(i)];
    if (e.value.is_zero()) continue;  // conj(h) i d_t h vanishes there
    const double w = rule.weights[i] * std::exp(2.0 * e.value.log_mag() - top);
    norm += w;
    if (with_energy) energy += w * e.energy.real();
  }
  TimeIntegral out;
  out.log_norm = top + std::log(norm) - std::log(kappa);
  out.mean_energy = energy / norm;
  return out;
}

}  // namespace

double log_norm(const OscillatorConfig& config, double t, int nodes_per_unit) {
  return integrate_full_line(config, t, nodes_per_unit, false).log_norm;
}

double averaged_local_time_energy(const OscillatorConfig& config, double t, int nodes_per_unit) {
  return integrate_full_line(config, t, nodes_per_unit, true).mean_energy;
}

LogComplex first_order_approx(const OscillatorConfig& config, double x, double t) {
  require_inverse_n2(config, "first_order_approx");
  const double N = config.N;
  const double z = z_of(config, x);
  const cd B(config.g, z);
  const LogComplex lb = LogComplex::from_complex(B);
  // 2^{N-1} B^{N-2} [2 B^2 + (t/N)(2 z B - i (N-1))]
  const cd bracket = 2.0 * B * B + (t / N) * (2.0 * z * B - cd(0.0, N - 1.0));
  const LogComplex prefactor((N - 1.0) * std::numbers::ln2 - 0.5 * z * z, -0.5 * config.omega() * t);
  return prefactor * lb.pow(N - 2.0) * LogComplex::from_complex(bracket);
}

double resummed_log_prefactor(int N, int n) {
  if (N < 1 || n < 0 || 2 * n > N) throw std::domain_error("resummed_log_prefactor: need 0 <= 2n <= N");
  double acc = 0.0;
  for (int k = 0; k < 2 * n; ++k) acc += std::log1p(-static_cast<double>(k) / N);
  return acc;
}

LogComplex resummed_series(const OscillatorConfig& config, double x, double t, int n_terms) {
  require_inverse_n2(config, "resummed_series");
  const int N = config.N;
  if (n_terms < 0 || 2 * n_terms > N) throw std::domain_error("resummed_series: need 0 <= n_terms <= N/2");
  const double z = z_of(config, x);
  const LogComplex B = LogComplex::from_complex(cd(config.g, z));
  const LogComplex u = LogComplex::from_complex(cd(0.0, -0.5 * t)) / (B * B);

  std::vector<LogComplex> terms;
  terms.reserve(static_cast<std::size_t>(n_terms) + 1);
  LogComplex un = LogComplex::one();
  for (int n = 0; n <= n_terms; ++n) {
    terms.push_back(un.scaled(resummed_log_prefactor(N, n) - std::lgamma(n + 1.0)));
    un *= u;
  }
  const LogComplex head(N * std::numbers::ln2 - 0.5 * z * z, 0.0);
  return head * B.pow(N) * log_sum(terms);
}

std::complex<double> plane_wave_approx(const OscillatorConfig& config, double x, double t) {
  require_inverse_n2(config, "plane_wave_approx");
  const double N = config.N;
  const double g = config.g;
  const double z = z_of(config, x);
  return std::exp(cd(N * std::log(2.0 * g) - 0.5 * z * z, z * N / g - t / (2.0 * g * g)));
}

bool plane_wave_regime(const OscillatorConfig& config, double x, double t) {
  require_inverse_n2(config, "plane_wave_regime");
  return std::abs(z_of(config, x)) < config.g && std::abs(t) < 2.0 * config.g * config.g;
}

double plane_wave_frequency(const OscillatorConfig& config) {
  config.validate();
  return 1.0 / (2.0 * config.g * config.g);
}

double plane_wave_phase_velocity(const OscillatorConfig& config) {
  config.validate();
  return 1.0 / (2.0 * config.g * std::sqrt(config.scale));
}

std::vector<std::complex<double>> fig5_trace(const OscillatorConfig& config, const std::vector<double>& t_grid) {
  require_inverse_n2(config, "fig5_trace");
  const LogComplex origin(config.N * std::log(2.0 * config.g), 0.0);
  std::vector<cd> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back(ratio(hN_time(config, 0.0, t), origin));
  return out;
}

}  // namespace superlab::time_evolution
