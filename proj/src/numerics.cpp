#include "superlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace superlab {

namespace {

constexpr double kRescaleAbove = 1e150;
constexpr double kRescaleFactor = 1e-150;
const double kLogRescale = std::log(1e150);

}  // namespace

double log_binomial(long long N, long long n) {
  if (N < 0 || n < 0 || n > N) {
    throw std::domain_error("log_binomial: need 0 <= n <= N (got N=" + std::to_string(N) +
                            ", n=" + std::to_string(n) + ")");
  }
  const long long k = std::min(n, N - n);
  if (k <= 64) {
    double acc = 0.0;
    for (long long i = 1; i <= k; ++i) {
      acc += std::log(static_cast<double>(N - k + i) / static_cast<double>(i));
    }
    return acc;
  }
  const long double r = std::lgammal(static_cast<long double>(N) + 1.0L) -
                        std::lgammal(static_cast<long double>(k) + 1.0L) -
                        std::lgammal(static_cast<long double>(N - k) + 1.0L);
  return static_cast<double>(r);
}

LogComplex hermite_log(int n, double z) {
  if (n < 0) throw std::domain_error("hermite_log: negative order");
  if (!std::isfinite(z)) throw std::domain_error("hermite_log: non-finite argument");
  if (n == 0) return LogComplex::one();

  double log_scale = 0.0;
  double prev = 1.0;
  double cur = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * z * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
    if (std::fabs(cur) > kRescaleAbove) {
      cur *= kRescaleFactor;
      prev *= kRescaleFactor;
      log_scale += kLogRescale;
    }
  }
  return LogComplex::from_real(cur).scaled(log_scale);
}

std::vector<LogComplex> hermite_log_table(int nmax, double z) {
  if (nmax < 0) throw std::domain_error("hermite_log_table: negative order");
  std::vector<LogComplex> out;
  out.reserve(static_cast<std::size_t>(nmax) + 1);
  out.push_back(LogComplex::one());
  double log_scale = 0.0;
  double prev = 1.0;
  double cur = 2.0 * z;
  if (nmax >= 1) out.push_back(LogComplex::from_real(cur));
  for (int k = 1; k < nmax; ++k) {
    const double next = 2.0 * z * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
    if (std::fabs(cur) > kRescaleAbove) {
      cur *= kRescaleFactor;
      prev *= kRescaleFactor;
      log_scale += kLogRescale;
    }
    out.push_back(LogComplex::from_real(cur).scaled(log_scale));
  }
  return out;
}

std::vector<LogComplex> hermite_function_log_table(int nmax, double y) {
  if (nmax < 0) throw std::domain_error("hermite_function_log_table: negative order");
  std::vector<LogComplex> out;
  out.reserve(static_cast<std::size_t>(nmax) + 1);

  // psi_n = value * exp(log_scale); the Gaussian factor lives in log_scale.
  double log_scale = -0.5 * y * y;
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  out.push_back(LogComplex::from_real(cur).scaled(log_scale));
  for (int k = 0; k < nmax; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * y * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::fabs(cur) > kRescaleAbove) {
      cur *= kRescaleFactor;
      prev *= kRescaleFactor;
      log_scale += kLogRescale;
    }
    out.push_back(LogComplex::from_real(cur).scaled(log_scale));
  }
  return out;
}

double hermite_function(int n, double y) {
  if (n < 0) throw std::domain_error("hermite_function: negative order");
  double log_scale = -0.5 * y * y;
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * y * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::fabs(cur) > kRescaleAbove) {
      cur *= kRescaleFactor;
      prev *= kRescaleFactor;
      log_scale += kLogRescale;
    }
  }
  if (cur == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::fabs(cur)) + log_scale), cur);
}

double legendre_P(int l, double u) { return legendre_with_derivatives(l, u).p; }

LegendreValue legendre_with_derivatives(int l, double u) {
  if (l < 0) throw std::domain_error("legendre_P: negative degree");
  if (!(std::fabs(u) <= 1.0)) throw std::domain_error("legendre_P: |u| > 1");

  // (p, dp, d2p) for degrees k-1 and k.
  LegendreValue lo{1.0, 0.0, 0.0};
  if (l == 0) return lo;
  LegendreValue hi{u, 1.0, 0.0};
  for (int k = 1; k < l; ++k) {
    LegendreValue next;
    next.p = ((2.0 * k + 1.0) * u * hi.p - k * lo.p) / (k + 1.0);
    next.dp = lo.dp + (2.0 * k + 1.0) * hi.p;
    next.d2p = lo.d2p + (2.0 * k + 1.0) * hi.dp;
    lo = hi;
    hi = next;
  }
  return hi;
}

namespace {

// Reference rule on (-1, 1): Golub-Welsch for the starting nodes, then one
// Newton step on P_n with the weights taken from P_n'.
std::pair<Eigen::VectorXd, Eigen::VectorXd> reference_gauss_legendre(int order) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  Eigen::VectorXd nodes = solver.eigenvalues();
  Eigen::VectorXd weights(order);

  for (int i = 0; i < order; ++i) {
    double x = nodes[i];
    double dp = 0.0;
    for (int iter = 0; iter < 3; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 1; k < order; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::fabs(step) < 1e-17) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return {nodes, weights};
}

}  // namespace

QuadratureRule quadrature(int order, double a, double b) {
  if (order < 2) throw std::domain_error("quadrature: order must be >= 2");
  if (!(a < b)) throw std::domain_error("quadrature: need a < b");
  auto [t, w] = reference_gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  QuadratureRule rule;
  rule.nodes = (half * t.array() + mid).matrix();
  rule.weights = half * w;
  rule.interval = {a, b};
  return rule;
}

long long panel_count(double a, double b, int nodes_per_unit) {
  if (!(a < b)) throw std::domain_error("composite_quadrature: need a < b");
  if (nodes_per_unit < 1) throw std::domain_error("composite_quadrature: nodes_per_unit must be positive");
  const double span = (b - a) * nodes_per_unit / kPanelOrder;
  return std::max<long long>(1, static_cast<long long>(std::ceil(span)));
}

QuadratureRule composite_quadrature(double a, double b, int nodes_per_unit) {
  return composite_quadrature_panels(a, b, panel_count(a, b, nodes_per_unit));
}

QuadratureRule composite_quadrature_panels(double a, double b, long long panels) {
  if (!(a < b)) throw std::domain_error("composite_quadrature: need a < b");
  if (panels < 1) throw std::domain_error("composite_quadrature: panels must be positive");
  auto [t, w] = reference_gauss_legendre(kPanelOrder);

  QuadratureRule rule;
  rule.nodes.resize(panels * kPanelOrder);
  rule.weights.resize(panels * kPanelOrder);
  rule.interval = {a, b};
  const double width = (b - a) / static_cast<double>(panels);
  for (long long p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double half = 0.5 * width;
    const double mid = lo + half;
    rule.nodes.segment(p * kPanelOrder, kPanelOrder) = (half * t.array() + mid).matrix();
    rule.weights.segment(p * kPanelOrder, kPanelOrder) = half * w;
  }
  return rule;
}

}  // namespace superlab
