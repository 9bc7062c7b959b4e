#include "superlab/weak_value.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace superlab {

namespace {

using cd = std::complex<double>;

std::vector<LogComplex> to_log(const std::vector<cd>& coeffs) {
  std::vector<LogComplex> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(LogComplex::from_complex(c));
  return out;
}

std::vector<cd> to_native(const std::vector<LogComplex>& coeffs) {
  std::vector<cd> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    const cd v = c.to_complex();
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw numerical_error("spectral_evaluator: coefficient magnitude exceeds the double range");
    }
    out.push_back(v);
  }
  return out;
}

void set_band(BandLimitedState& s) {
  s.lambda_min = *std::min_element(s.eigenvalues.begin(), s.eigenvalues.end());
  s.lambda_max = *std::max_element(s.eigenvalues.begin(), s.eigenvalues.end());
}

double band_slack(double lo, double hi) { return 1e-9 * std::max({1.0, std::fabs(lo), std::fabs(hi)}); }

}  // namespace

void BandLimitedState::validate() const {
  if (coefficients.empty()) throw std::invalid_argument("BandLimitedState: empty coefficient list");
  if (coefficients.size() != eigenvalues.size() || coefficients.size() != labels.size()) {
    throw std::invalid_argument("BandLimitedState: coefficient, label and eigenvalue counts differ");
  }
  if (std::all_of(coefficients.begin(), coefficients.end(), [](const LogComplex& c) { return c.is_zero(); })) {
    throw std::invalid_argument("BandLimitedState: all coefficients are zero");
  }
  if (!(lambda_min <= lambda_max)) throw std::invalid_argument("BandLimitedState: empty eigenvalue band");
  for (double lambda : eigenvalues) {
    if (lambda < lambda_min || lambda > lambda_max) {
      throw std::invalid_argument("BandLimitedState: eigenvalue outside the band limit");
    }
  }
  if (!(domain.first < domain.second)) throw std::invalid_argument("BandLimitedState: empty domain");
}

double BandLimitedState::basis_norm_sq(std::size_t j) const {
  switch (basis) {
    case Basis::plane_wave:
      return domain.second - domain.first;
    case Basis::oscillator:
      return 1.0;
    case Basis::legendre_m0:
      return 2.0 / (2.0 * labels.at(j) + 1.0);
  }
  return 1.0;
}

BandLimitedState plane_wave_state(std::vector<double> wavenumbers, std::vector<cd> coeffs,
                                  std::pair<double, double> period) {
  BandLimitedState s;
  s.basis = Basis::plane_wave;
  s.coefficients = to_log(coeffs);
  s.labels = wavenumbers;
  s.eigenvalues = std::move(wavenumbers);
  s.domain = period;
  if (!s.eigenvalues.empty()) set_band(s);
  s.validate();
  return s;
}

BandLimitedState oscillator_state(std::vector<int> levels, std::vector<cd> coeffs, double mass, double omega) {
  if (!(mass > 0.0) || !(omega > 0.0)) throw std::invalid_argument("oscillator_state: mass and omega must be positive");
  BandLimitedState s;
  s.basis = Basis::oscillator;
  s.coefficients = to_log(coeffs);
  s.mass = mass;
  s.omega = omega;
  for (int n : levels) {
    if (n < 0) throw std::invalid_argument("oscillator_state: negative level");
    s.labels.push_back(n);
    s.eigenvalues.push_back(omega * (n + 0.5));
  }
  const double inf = std::numeric_limits<double>::infinity();
  s.domain = {-inf, inf};
  if (!s.eigenvalues.empty()) set_band(s);
  s.validate();
  return s;
}

BandLimitedState legendre_state(std::vector<int> degrees, std::vector<cd> coeffs) {
  BandLimitedState s;
  s.basis = Basis::legendre_m0;
  s.coefficients = to_log(coeffs);
  for (int l : degrees) {
    if (l < 0) throw std::invalid_argument("legendre_state: negative degree");
    s.labels.push_back(l);
    s.eigenvalues.push_back(l * (l + 1.0));
  }
  s.domain = {0.0, std::numbers::pi};
  if (!s.eigenvalues.empty()) set_band(s);
  s.validate();
  return s;
}

BandLimitedState superoscillation_state(int N, double a) {
  if (N < 1) throw std::invalid_argument("superoscillation_state: N must be >= 1");
  std::vector<double> ks;
  std::vector<cd> coeffs;
  const double p = 0.5 * (1.0 + a);
  const double q = 0.5 * (1.0 - a);
  for (int j = 0; j <= N; ++j) {
    ks.push_back(1.0 - 2.0 * j / N);
    coeffs.push_back(std::exp(log_binomial(N, j)) * std::pow(p, N - j) * std::pow(q, j));
  }
  const double half = std::numbers::pi * N;
  return plane_wave_state(std::move(ks), std::move(coeffs), {-half, half});
}

StateEvaluator spectral_evaluator(const BandLimitedState& state) {
  state.validate();
  const std::vector<cd> c = to_native(state.coefficients);
  const std::vector<double> labels = state.labels;
  StateEvaluator ev;
  ev.derivative_kind = DerivativeKind::spectral;

  switch (state.basis) {
    case Basis::plane_wave: {
      auto sum = [c, labels](double x, int order) {
        cd acc{0.0, 0.0};
        for (std::size_t j = 0; j < c.size(); ++j) {
          const double k = labels[j];
          const cd factor = order == 0 ? cd(1.0, 0.0) : order == 1 ? cd(0.0, k) : cd(-k * k, 0.0);
          acc += c[j] * factor * std::polar(1.0, k * x);
        }
        return acc;
      };
      ev.value = [sum](double x) { return sum(x, 0); };
      ev.d1 = [sum](double x) { return sum(x, 1); };
      ev.d2 = [sum](double x) { return sum(x, 2); };
      break;
    }
    case Basis::oscillator: {
      const double s = state.mass * state.omega;
      const double amp = std::pow(s, 0.25);
      const double dy = std::sqrt(s);
      int nmax = 0;
      for (double n : labels) nmax = std::max(nmax, static_cast<int>(n));
      // d psi_n/dy = sqrt(n/2) psi_{n-1} - sqrt((n+1)/2) psi_{n+1}, applied once or twice.
      auto sum = [c, labels, amp, dy, s, nmax](double x, int order) {
        const double y = dy * x;
        const auto table = hermite_function_log_table(nmax + 2, y);
        auto phi = [&table](int k) { return k < 0 ? 0.0 : table[k].to_complex().real(); };
        cd acc{0.0, 0.0};
        for (std::size_t j = 0; j < c.size(); ++j) {
          const int n = static_cast<int>(labels[j]);
          double v = 0.0;
          if (order == 0) {
            v = phi(n);
          } else if (order == 1) {
            v = std::sqrt(n / 2.0) * phi(n - 1) - std::sqrt((n + 1) / 2.0) * phi(n + 1);
          } else {
            v = 0.5 * (std::sqrt(n * (n - 1.0)) * phi(n - 2) - (2.0 * n + 1.0) * phi(n) +
                       std::sqrt((n + 1.0) * (n + 2.0)) * phi(n + 2));
          }
          acc += c[j] * v;
        }
        return acc * amp * std::pow(s, 0.5 * order);
      };
      ev.value = [sum](double x) { return sum(x, 0); };
      ev.d1 = [sum](double x) { return sum(x, 1); };
      ev.d2 = [sum](double x) { return sum(x, 2); };
      break;
    }
    case Basis::legendre_m0: {
      auto sum = [c, labels](double theta, int order) {
        const double u = std::cos(theta);
        const double sn = std::sin(theta);
        cd acc{0.0, 0.0};
        for (std::size_t j = 0; j < c.size(); ++j) {
          const auto P = legendre_with_derivatives(static_cast<int>(labels[j]), u);
          double v = P.p;
          if (order == 1) v = -sn * P.dp;
          if (order == 2) v = sn * sn * P.d2p - u * P.dp;
          acc += c[j] * v;
        }
        return acc;
      };
      ev.value = [sum](double t) { return sum(t, 0); };
      ev.d1 = [sum](double t) { return sum(t, 1); };
      ev.d2 = [sum](double t) { return sum(t, 2); };
      // m = 0 for every component: no azimuthal dependence.
      ev.d2_azimuthal = [](double) { return cd{0.0, 0.0}; };
      break;
    }
  }
  return ev;
}

StateEvaluator superoscillation_evaluator(int N, double a) {
  if (N < 1) throw std::invalid_argument("superoscillation_evaluator: N must be >= 1");
  auto f = [N, a](double x) { return cd(std::cos(x / N), a * std::sin(x / N)); };
  auto df = [N, a](double x) { return cd(-std::sin(x / N), a * std::cos(x / N)) / static_cast<double>(N); };
  StateEvaluator ev;
  ev.value = [f, N](double x) { return std::pow(f(x), N); };
  ev.d1 = [f, df, N](double x) { return static_cast<double>(N) * std::pow(f(x), N - 1) * df(x); };
  ev.d2 = [f, df, N](double x) {
    const cd fx = f(x), d = df(x);
    const double n = N;
    return n * (n - 1.0) * std::pow(fx, N - 2) * d * d - n * std::pow(fx, N) / (n * n);
  };
  return ev;
}

StateEvaluator finite_difference_evaluator(std::function<cd(double)> value, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_difference_evaluator: step must be positive");
  StateEvaluator ev;
  ev.derivative_kind = DerivativeKind::finite_difference;
  ev.value = value;
  ev.d1 = [value, h](double x) { return (value(x + h) - value(x - h)) / (2.0 * h); };
  ev.d2 = [value, h](double x) { return (value(x + h) - 2.0 * value(x) + value(x - h)) / (h * h); };
  return ev;
}

OperatorApply momentum_operator() {
  return [](const StateEvaluator& s, double x) { return cd(0.0, -1.0) * s.d1(x); };
}

OperatorApply oscillator_hamiltonian(double mass, double omega) {
  return [mass, omega](const StateEvaluator& s, double x) {
    return -s.d2(x) / (2.0 * mass) + 0.5 * mass * omega * omega * x * x * s.value(x);
  };
}

OperatorApply angular_momentum_squared() {
  return [](const StateEvaluator& s, double theta) {
    const double sn = std::sin(theta);
    cd out = s.d2(theta) + (std::cos(theta) / sn) * s.d1(theta);
    if (s.d2_azimuthal) out += s.d2_azimuthal(theta) / (sn * sn);
    return -out;
  };
}

double local_wavenumber(const StateEvaluator& state, double x, double zero_tolerance) {
  const cd psi = state.value(x);
  if (std::abs(psi) <= zero_tolerance || psi == 0.0) return kSingular;
  return (state.d1(x) / psi).imag();
}

double supergrowth_rate(const StateEvaluator& state, double x, double zero_tolerance) {
  const cd psi = state.value(x);
  if (std::abs(psi) <= zero_tolerance || psi == 0.0) return kSingular;
  return (state.d1(x) / psi).real();
}

void classify_profile(ObservableProfile& profile, const Eigen::VectorXd& log_abs_psi, double zero_tolerance) {
  const Eigen::Index n = profile.grid.size();
  profile.super_flags.assign(n, false);
  profile.singular_flags.assign(n, false);
  const double top = n > 0 ? log_abs_psi.maxCoeff() : 0.0;
  const double cutoff = top + std::log(zero_tolerance);
  const double slack = band_slack(profile.lambda_min, profile.lambda_max);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lm = log_abs_psi[i];
    const bool singular = lm == -std::numeric_limits<double>::infinity() || lm < cutoff || is_singular(profile.values[i]);
    profile.singular_flags[i] = singular;
    if (singular) {
      profile.values[i] = cd(kSingular, kSingular);
      continue;
    }
    const double re = profile.values[i].real();
    profile.super_flags[i] = re < profile.lambda_min - slack || re > profile.lambda_max + slack;
  }
}

ObservableProfile weak_value_field(const OperatorApply& op, const StateEvaluator& state, const Eigen::VectorXd& grid,
                                   double lambda_min, double lambda_max, double zero_tolerance) {
  if (grid.size() == 0) throw std::invalid_argument("weak_value_field: empty grid");
  ObservableProfile p;
  p.grid = grid;
  p.lambda_min = lambda_min;
  p.lambda_max = lambda_max;
  p.values.resize(grid.size());
  Eigen::VectorXd log_abs_psi(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const cd psi = state.value(grid[i]);
    log_abs_psi[i] = std::log(std::abs(psi));
    p.values[i] = psi == 0.0 ? cd(kSingular, kSingular) : op(state, grid[i]) / psi;
  }
  classify_profile(p, log_abs_psi, zero_tolerance);
  return p;
}

OperatorApply natural_observable(const BandLimitedState& state) {
  switch (state.basis) {
    case Basis::plane_wave:
      return momentum_operator();
    case Basis::oscillator:
      return oscillator_hamiltonian(state.mass, state.omega);
    case Basis::legendre_m0:
      return angular_momentum_squared();
  }
  return momentum_operator();
}

SumRuleResult sum_rule_check(const BandLimitedState& state, const ObservableProfile& profile,
                             const QuadratureRule& rule) {
  state.validate();
  if (profile.grid.size() != rule.nodes.size() || (profile.grid - rule.nodes).cwiseAbs().maxCoeff() > 0.0) {
    throw std::invalid_argument("sum_rule_check: profile must be sampled on the quadrature nodes");
  }
  const StateEvaluator ev = spectral_evaluator(state);
  const auto [a, b] = rule.interval;

  if (state.basis == Basis::oscillator) {
    double peak = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) peak = std::max(peak, std::norm(ev.value(rule.nodes[i])));
    const double edge = std::max(std::norm(ev.value(a)), std::norm(ev.value(b)));
    if (!(edge < 1e-10 * peak)) {
      throw std::invalid_argument("sum_rule_check: state is not contained in the quadrature interval");
    }
  } else {
    const double tol = 1e-12 * std::max(1.0, b - a);
    if (std::fabs(a - state.domain.first) > tol || std::fabs(b - state.domain.second) > tol) {
      throw std::invalid_argument("sum_rule_check: quadrature interval must be the basis domain");
    }
  }

  double weighted = 0.0;
  double norm = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const double measure = state.basis == Basis::legendre_m0 ? std::sin(x) : 1.0;
    const double density = std::norm(ev.value(x)) * measure * rule.weights[i];
    norm += density;
    if (!profile.singular_flags.empty() && profile.singular_flags[i]) continue;
    weighted += density * profile.values[i].real();
  }

  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < state.coefficients.size(); ++j) {
    const double w = std::exp(2.0 * state.coefficients[j].log_mag()) * state.basis_norm_sq(j);
    num += w * state.eigenvalues[j];
    den += w;
  }

  SumRuleResult r;
  r.lhs = weighted / norm;
  r.rhs = num / den;
  r.tolerance = kSumRuleTolerance * std::max(1.0, std::fabs(r.rhs));
  return r;
}

SumRuleResult sum_rule_check(const BandLimitedState& state, const QuadratureRule& rule) {
  const StateEvaluator ev = spectral_evaluator(state);
  const ObservableProfile p = weak_value_field(natural_observable(state), ev, rule.nodes, state.lambda_min,
                                               state.lambda_max, kDefaultZeroTolerance);
  return sum_rule_check(state, p, rule);
}

GeneratingFunction generating_function(const BandLimitedState& state, const std::vector<cd>& post_overlaps,
                                       const Eigen::VectorXd& chi_grid) {
  state.validate();
  if (post_overlaps.size() != state.coefficients.size()) {
    throw std::invalid_argument("generating_function: one overlap per eigenstate is required");
  }
  const std::vector<cd> c = to_native(state.coefficients);
  cd denom{0.0, 0.0};
  double scale = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    denom += c[j] * post_overlaps[j];
    scale += std::abs(c[j] * post_overlaps[j]);
  }
  if (!(std::abs(denom) > 1e-14 * scale)) {
    throw numerical_error("generating_function: postselection overlap <phi|psi> vanishes");
  }

  GeneratingFunction out;
  out.chi = chi_grid;
  out.values.resize(chi_grid.size());
  out.local_frequency.resize(chi_grid.size());
  for (Eigen::Index i = 0; i < chi_grid.size(); ++i) {
    cd z{0.0, 0.0};
    cd dz{0.0, 0.0};
    for (std::size_t j = 0; j < c.size(); ++j) {
      const cd term = c[j] * std::polar(1.0, chi_grid[i] * state.eigenvalues[j]) * post_overlaps[j];
      z += term;
      dz += state.eigenvalues[j] * term;
    }
    out.values[i] = z / denom;
    out.local_frequency[i] = z == 0.0 ? kSingular : (dz / z).real();
  }
  return out;
}

std::vector<std::pair<double, double>> detect_super_regions(const ObservableProfile& profile) {
  const Eigen::Index n = profile.grid.size();
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(profile.grid[i] > profile.grid[i - 1])) {
      throw std::invalid_argument("detect_super_regions: grid must be strictly increasing");
    }
  }
  std::vector<std::pair<double, double>> regions;
  Eigen::Index start = -1;
  for (Eigen::Index i = 0; i <= n; ++i) {
    const bool on = i < n && profile.super_flags[i] && !profile.singular_flags[i];
    if (on && start < 0) start = i;
    if (!on && start >= 0) {
      regions.emplace_back(profile.grid[start], profile.grid[i - 1]);
      start = -1;
    }
  }
  return regions;
}

}  // namespace superlab
