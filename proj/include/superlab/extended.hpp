#pragma once

#include <array>

#include "superlab/log_complex.hpp"
#include "superlab/oscillator.hpp"

// Extended-precision spectral sums for the oscillator sequence. The terms
// c_n psi_n(x) of h_N cancel by up to ~e^3600 at N = 1000, which no
// double-precision summation order survives; these routines rebuild the
// coefficients in MPFR at fixed precision tiers and escalate until two
// consecutive tiers agree.
namespace superlab::extended {

/// Decimal digits of the precision tiers.
inline constexpr std::array<unsigned, 6> kTierDigits{50, 200, 600, 1800, 3200, 6000};

struct SpectralResult {
  LogComplex value;            // sum_n c_n e^{-i E_n t} psi_n(x)
  LogComplex energy_weighted;  // sum_n c_n E_n e^{-i E_n t} psi_n(x)
  unsigned digits = 0;         // tier that was accepted
};

/// Spectral sum at one fixed tier (index into kTierDigits).
SpectralResult spectral_sum_at_tier(const oscillator::OscillatorConfig& config, double x, double t,
                                    std::size_t tier);

/// Adaptive: accepts the first tier whose value and energy-weighted sums agree
/// with the next tier to 1e-13 relative. Throws numerical_error when the top
/// tiers still disagree.
SpectralResult spectral_sum(const oscillator::OscillatorConfig& config, double x, double t);

/// Sum_k C(N,k) i^k H_{N-k}(a) H_k(b) term by term in MPFR, escalating tiers until
/// two agree to 1e-15 relative (the terms cancel when |a + i b| is small).
std::complex<double> hermite_identity_sum(int N, double a, double b);

}  // namespace superlab::extended
