#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isingbtz/modes.hpp"
#include "isingbtz/numerics.hpp"

using namespace isingbtz;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("momentum grids match the sector quantization rules") {
  const ModeSet ns = momentum_grid(4, Sector::NS);
  REQUIRE(ns.ka.size() == 4);
  CHECK(ns.ka[0] == doctest::Approx(-3.0 * kPi / 4));
  CHECK(ns.ka[1] == doctest::Approx(-kPi / 4));
  CHECK(ns.ka[2] == doctest::Approx(kPi / 4));
  CHECK(ns.ka[3] == doctest::Approx(3.0 * kPi / 4));

  const ModeSet r = momentum_grid(4, Sector::R);
  REQUIRE(r.ka.size() == 4);
  CHECK(r.ka[0] == doctest::Approx(-kPi / 2));
  CHECK(r.ka[1] == 0.0);
  CHECK(r.ka[2] == doctest::Approx(kPi / 2));
  CHECK(r.ka[3] == kPi);

  CHECK_THROWS_AS(momentum_grid(5, Sector::NS), std::invalid_argument);
  CHECK_THROWS_AS(momentum_grid(0, Sector::R), std::invalid_argument);
}

TEST_CASE("large grid is symmetric under k -> -k, bit-exactly") {
  const ModeSet m = make_modes(1000, Sector::NS);
  REQUIRE(m.ka.size() == 1000);
  for (int i = 0; i < 500; ++i) {
    const int jneg = 499 - i;   // partner of index 500 + i
    const int jpos = 500 + i;
    CHECK(m.ka[jneg] == -m.ka[jpos]);
    CHECK(m.eps[jneg] == m.eps[jpos]);
    CHECK(m.u[jneg] == m.u[jpos]);
    CHECK(m.v[jneg] == -m.v[jpos]);
  }
}

TEST_CASE("dispersion values") {
  CHECK(dispersion(0.0, 64) == 0.0);
  CHECK(dispersion(kPi, 64) == doctest::Approx(64.0 / kPi).epsilon(1e-15));
  CHECK(dispersion(kPi / 2, 4) ==
        doctest::Approx((4.0 / kPi) * std::sin(kPi / 4)).epsilon(1e-15));
  CHECK(dispersion(kPi / 2, 4) == doctest::Approx(0.9003163161571061));
}

TEST_CASE("low-k NS dispersion is integer-plus-half spaced at L = 1000") {
  const ModeSet m = make_modes(1000, Sector::NS);
  // modes n = 0..5 live at indices 500..505; the lattice correction is
  // (n+1/2)^3 (pi/L)^2 / 6, i.e. 2.74e-4 at n = 5 -- slightly above a flat
  // 1e-4, so the bound tracks the cubic term
  for (int n = 0; n <= 5; ++n) {
    const double cubic = std::pow(n + 0.5, 3) * std::pow(kPi / 1000, 2) / 6.0;
    const double bound = std::max(1e-4, 1.01 * cubic);
    CHECK(std::abs(m.eps[500 + n] - (n + 0.5)) <= bound);
    CHECK(std::abs(m.eps[499 - n] - (n + 0.5)) <= bound);
    if (n <= 3) CHECK(std::abs(m.eps[500 + n] - (n + 0.5)) <= 1e-4);
  }
}

TEST_CASE("bogoliubov coefficients") {
  CHECK(bogoliubov(0.0) == std::pair{1.0, 0.0});
  CHECK(bogoliubov(kPi) == std::pair{1.0, 0.0});
  const ModeSet m = make_modes(10000, Sector::NS);
  for (std::size_t i = 0; i < m.ka.size(); ++i) {
    CHECK(std::abs(m.u[i] * m.u[i] + m.v[i] * m.v[i] - 1.0) < 1e-14);
    if (std::sin(m.ka[i]) > 0.0) CHECK(m.v[i] > 0.0);
    if (std::sin(m.ka[i]) < 0.0) CHECK(m.v[i] < 0.0);
  }
  // u v = cos(ka/2)/2 at criticality (positive branch)
  auto [u, v] = bogoliubov(1.1);
  CHECK(u * v == doctest::Approx(0.5 * std::cos(0.55)).epsilon(1e-14));
}

TEST_CASE("fermi factors") {
  CHECK(fermi(0.0, 2.5) == doctest::Approx(0.5));
  CHECK(fermi(3.0, 0.0) == 0.0);
  CHECK(fermi(0.0, 0.0) == 0.5);
  CHECK(fermi(1.0, 1.0) == doctest::Approx(1.0 / (1.0 + std::exp(1.0))));
  CHECK(fermi(1e8, 1.0) == 0.0);  // overflow-safe tail
  CHECK_THROWS_AS(fermi(1.0, -0.5), std::invalid_argument);
}

TEST_CASE("NS even log-partition matches 4-state Fock enumeration at L = 2") {
  // NS grid at L = 2: ka = +-pi/2, eps = (2/pi) sin(pi/4) each.
  const ModeSet m = make_modes(2, Sector::NS);
  const double T = 10.0;
  const double e0 = -0.5 * (m.eps[0] + m.eps[1]);
  // even-parity configurations: vacuum and both modes filled
  const double Z = std::exp(-e0 / T) + std::exp(-(e0 + m.eps[0] + m.eps[1]) / T);
  const double expected = std::log(Z);
  CHECK(std::abs(log_partition_sector(2, T, Sector::NS, Parity::Even) -
                 expected) < 1e-10);
}

TEST_CASE("R sector: odd and even projections coincide (zero mode)") {
  // eps = 0 at ka = 0 kills the sinh product, so both parities give
  // (1/2) prod 2cosh.
  const double even = log_partition_sector(6, 0.7, Sector::R, Parity::Even);
  const double odd = log_partition_sector(6, 0.7, Sector::R, Parity::Odd);
  CHECK(even == odd);
}

TEST_CASE("thermal occupation vector") {
  const ModeSet m = make_modes(8, Sector::R);
  const ThermalOccupation occ = thermal_occupation(m, 0.5);
  REQUIRE(occ.f.size() == 8);
  for (std::size_t i = 0; i < occ.f.size(); ++i) {
    CHECK(occ.f[i] >= 0.0);
    CHECK(occ.f[i] <= 0.5);
    if (m.eps[i] == 0.0) CHECK(occ.f[i] == 0.5);
  }
}
