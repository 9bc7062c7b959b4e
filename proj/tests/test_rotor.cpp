#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "superlab/rotor.hpp"

using namespace superlab;
using namespace superlab::rotor;
using cd = std::complex<double>;

TEST_CASE("local L^2 examples") {
  const RotorState half{0.5, 1.0};
  CHECK(std::abs(local_L2(half, std::numbers::pi / 2)) < 1e-15);
  CHECK(local_L2(half, std::numbers::pi) == doctest::Approx(-2.0));
  CHECK(is_singular(local_L2(RotorState{1.0, 1.0}, std::numbers::pi)));
  CHECK(is_singular(local_L2_generic(RotorState{1.0, 1.0}, std::numbers::pi)));
}

TEST_CASE("closed form agrees with the generic operator route") {
  for (double c : {0.0, 0.25, 0.5, 0.9}) {
    const RotorState s{c, 1.0};
    const auto grid = theta_grid(100);
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      CHECK(std::abs(local_L2(s, grid[i]) - local_L2_generic(s, grid[i])) < 1e-9);
    }
  }
}

TEST_CASE("negative local L^2 on (pi/2, pi) and inside the band elsewhere") {
  const RotorState s{0.5, 1.0};
  const auto grid = theta_grid(180);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double v = local_L2(s, grid[i]);
    if (grid[i] > std::numbers::pi / 2) {
      CHECK(v < 0.0);
    } else {
      CHECK(v >= 0.0);
      CHECK(v <= 2.0);
    }
  }
}

TEST_CASE("time phase") {
  const RotorState s{0.5, 1.3};
  for (double theta : {0.2, 1.1, 2.7}) CHECK(rotor_time_phase(s, theta, 0.0) == cd(1.0, 0.0));
  for (double t : {0.0, 0.5, 7.0}) CHECK(std::abs(rotor_time_phase(s, std::numbers::pi / 2, t) - 1.0) < 1e-15);
  // i d/dt ln of the phase factor equals the time frequency.
  const double theta = 2.2, t = 0.4, h = 1e-5;
  const cd d = (std::log(rotor_time_phase(s, theta, t + h)) - std::log(rotor_time_phase(s, theta, t - h))) / (2 * h);
  CHECK((cd(0, 1) * d).real() == doctest::Approx(rotor_time_frequency(s, theta)).epsilon(1e-8));
  CHECK(rotor_time_frequency(s, theta) == doctest::Approx(local_L2(s, theta) / (2 * 1.3)));
}

TEST_CASE("exact evolution") {
  const RotorState s{0.5, 1.0};
  for (double theta : {0.3, 1.9}) {
    CHECK(std::abs(rotor_exact_evolution(s, theta, 0.0) - (1.0 + 0.5 * std::cos(theta))) < 1e-15);
  }
  for (double t : {0.0, 0.8, 3.3}) {
    const cd expected = 1.0 + 0.5 * std::polar(1.0, -2.0 * t / 2.0);
    CHECK(std::abs(rotor_exact_evolution(s, 0.0, t) - expected) < 1e-15);
  }
  // The exact local energy at t = 0 is the local L^2 times 1/(2 m a^2).
  CHECK(rotor_exact_local_energy(s, 2.5, 0.0).real() == doctest::Approx(local_L2(s, 2.5) / 2.0));
}

TEST_CASE("phase approximation error scales as t^2") {
  const RotorState s{0.5, 1.0};
  for (double theta : {0.4, 1.3, 2.6}) {
    auto err = [&](double t) {
      return std::abs(rotor_exact_evolution(s, theta, t) - rotor_time_phase(s, theta, t) * rotor_exact_evolution(s, theta, 0.0));
    };
    CHECK(err(1e-2) / err(5e-3) == doctest::Approx(4.0).epsilon(0.125));
  }
}

TEST_CASE("theta grid and profile") {
  const auto grid = theta_grid(4);
  CHECK(grid[0] == doctest::Approx(std::numbers::pi / 8));
  CHECK(grid[3] == doctest::Approx(7 * std::numbers::pi / 8));
  const auto prof = local_L2_profile(RotorState{0.5, 1.0}, theta_grid(10));
  CHECK(prof.lambda_min == 0.0);
  CHECK(prof.lambda_max == 2.0);
  for (int i = 0; i < 10; ++i) CHECK(prof.super_flags[i] == (prof.grid[i] > std::numbers::pi / 2));
  CHECK_THROWS_AS(local_L2(RotorState{-0.1, 1.0}, 1.0), std::invalid_argument);
}
