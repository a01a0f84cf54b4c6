#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isingbtz/gravity.hpp"
#include "isingbtz/numerics.hpp"
#include "isingbtz/thermo.hpp"

using namespace isingbtz;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("low-T entropy plateau at L = 1000") {
  CHECK(chain_entropy(1000, 0.01) < 0.01);
  CHECK(chain_entropy(1000, 0.01) >= 0.0);
}

TEST_CASE("high-T entropy slope approaches the CFT value pi^2/3") {
  const double slope = chain_entropy_derivative(1000, 0.5);
  CHECK(std::abs(slope - kPi * kPi / 3.0) / (kPi * kPi / 3.0) < 0.1);
}

TEST_CASE("analytic derivative agrees with central differences") {
  const int L = 256;
  const double T = 0.3;
  const double h = 1e-5 * T;
  const double fd =
      (chain_entropy(L, T + h) - chain_entropy(L, T - h)) / (2.0 * h);
  const double an = chain_entropy_derivative(L, T);
  CHECK(std::abs(an - fd) / std::abs(an) < 1e-5);
}

TEST_CASE("entropy derivative vanishes at T -> 0 (finite-size gap)") {
  CHECK(chain_entropy_derivative(64, 0.005) < 1e-8);
}

TEST_CASE("entropy curve is nonnegative and nondecreasing") {
  const std::vector<double> grid = hybrid_temperature_grid(0.01, 1.0, 120);
  REQUIRE(grid.size() == 120);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);

  const EntropyCurve c = chain_entropy_curve(500, grid, 2);
  for (std::size_t i = 0; i < c.S.size(); ++i) {
    CHECK(c.S[i] >= 0.0);
    CHECK(c.dSdT[i] >= 0.0);
    if (i) CHECK(c.S[i] >= c.S[i - 1]);
  }
}

TEST_CASE("two derivative routes are consistent: S(T2)-S(T1) = int C/T dT") {
  const int L = 200;
  const double T1 = 0.2, T2 = 0.35;
  const double dS = chain_entropy(L, T2) - chain_entropy(L, T1);
  const double integral = trapezoid_refine_real(
      [&](double T) { return chain_entropy_derivative(L, T); }, T1, T2, 65,
      1 << 14, 1e-9);
  CHECK(dS == doctest::Approx(integral).epsilon(1e-6));
}

TEST_CASE("dS/dT minimum sits at T = 0.16 +- 0.02 for L = 1000") {
  const MinimizeResult m = locate_dsdt_minimum(1000, 0.05, 0.4);
  CHECK_FALSE(m.boundary);
  CHECK(m.x > 0.14);
  CHECK(m.x < 0.18);
}

TEST_CASE("gravitational analogue minimum within 5% of 1/(2 pi)") {
  const GravParams g = GravParams::classical();
  const MinimizeResult m = golden_section_minimize(
      [&](double T) { return grav_entropy_derivative(T, g); }, 0.05, 0.4,
      1e-4);
  CHECK_FALSE(m.boundary);
  CHECK(std::abs(m.x - 1.0 / (2.0 * kPi)) * 2.0 * kPi < 0.05);
}

TEST_CASE("minimum location is stable in system size") {
  const double t250 = locate_dsdt_minimum(250, 0.05, 0.4).x;
  const double t500 = locate_dsdt_minimum(500, 0.05, 0.4).x;
  const double t1000 = locate_dsdt_minimum(1000, 0.05, 0.4).x;
  CHECK(std::abs(t250 - t500) < 0.02);
  CHECK(std::abs(t500 - t1000) < 0.02);
  CHECK(std::abs(t250 - t1000) < 0.02);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(chain_entropy(100, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(chain_entropy(100, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(locate_dsdt_minimum(100, 0.4, 0.1), std::invalid_argument);
}
