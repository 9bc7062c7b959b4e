#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "superlab/log_complex.hpp"

namespace superlab {

/// Raised when a computation cannot reach its accuracy contract.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ln C(N, n), accurate to ~1e-13 relative for N up to 1e6.
double log_binomial(long long N, long long n);

/// Physicists' Hermite polynomial H_n(z) as a signed log value (phase 0 or pi).
LogComplex hermite_log(int n, double z);

/// H_0(z) ... H_nmax(z) as signed log values.
std::vector<LogComplex> hermite_log_table(int nmax, double z);

/// Orthonormal oscillator eigenfunction psi_n(y) at dimensionless y.
double hermite_function(int n, double y);

/// psi_0(y) ... psi_nmax(y) as signed log values (never overflows or underflows).
std::vector<LogComplex> hermite_function_log_table(int nmax, double y);

/// Legendre polynomial P_l(u), |u| <= 1.
double legendre_P(int l, double u);

struct LegendreValue {
  double p = 0.0;
  double dp = 0.0;   // dP/du
  double d2p = 0.0;  // d2P/du2
};

/// P_l(u) and its first two derivatives from the derivative recurrences
/// P'_{l+1} = P'_{l-1} + (2l+1) P_l and P''_{l+1} = P''_{l-1} + (2l+1) P'_l.
LegendreValue legendre_with_derivatives(int l, double u);

// Scalar-generic forms, used with extended-precision reals.

/// psi_0(y) ... psi_nmax(y) by the normalized three-term recurrence.
template <typename Real>
std::vector<Real> hermite_function_table(int nmax, const Real& y) {
  using std::acos;
  using std::exp;
  using std::sqrt;
  std::vector<Real> out(static_cast<std::size_t>(nmax) + 1);
  const Real pi = acos(Real(-1));
  out[0] = exp(-y * y / 2) / sqrt(sqrt(pi));
  if (nmax >= 1) out[1] = sqrt(Real(2)) * y * out[0];
  for (int k = 1; k < nmax; ++k) {
    out[k + 1] = sqrt(Real(2) / Real(k + 1)) * y * out[k] - sqrt(Real(k) / Real(k + 1)) * out[k - 1];
  }
  return out;
}

/// H_0(z) ... H_nmax(z).
template <typename Real>
std::vector<Real> hermite_table(int nmax, const Real& z) {
  std::vector<Real> out(static_cast<std::size_t>(nmax) + 1);
  out[0] = Real(1);
  if (nmax >= 1) out[1] = 2 * z;
  for (int k = 1; k < nmax; ++k) out[k + 1] = 2 * z * out[k] - 2 * k * out[k - 1];
  return out;
}

/// Gauss-Legendre nodes and weights on an interval.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  std::pair<double, double> interval;

  Eigen::Index size() const { return nodes.size(); }

  template <typename F>
  auto integrate(F&& f) const {
    using R = decltype(f(0.0));
    R acc = R(0);
    for (Eigen::Index i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// Gauss-Legendre rule of the given order mapped to (a, b).
QuadratureRule quadrature(int order, double a, double b);

/// Default node density for energy and norm integrals.
inline constexpr int kDefaultNodesPerUnit = 200;
inline constexpr int kPanelOrder = 20;

/// Composite Gauss-Legendre on (a, b) with about nodes_per_unit nodes per
/// unit length, built from panels of kPanelOrder nodes.
QuadratureRule composite_quadrature(double a, double b, int nodes_per_unit = kDefaultNodesPerUnit);

/// Composite Gauss-Legendre on (a, b) with an explicit number of equal panels.
QuadratureRule composite_quadrature_panels(double a, double b, long long panels);

/// Panel count composite_quadrature uses for (a, b) at the given density.
long long panel_count(double a, double b, int nodes_per_unit);

}  // namespace superlab
