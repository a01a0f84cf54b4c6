#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "isingbtz/modes.hpp"
#include "isingbtz/oracle.hpp"
#include "isingbtz/response.hpp"

using namespace isingbtz;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("retarded kernel is causal and exactly zero at equal time") {
  for (ThermalScheme sch :
       {ThermalScheme::ExactProjected, ThermalScheme::FactorizedNS}) {
    const ResponseKernel kern(64, 0.7, sch);
    CHECK(kern.retarded_green(-1.0, 3) == 0.0);
    CHECK(kern.retarded_green(-1e-12, 3) == 0.0);
    for (int s : {1, 5, 31}) {
      CHECK(std::abs(kern.retarded_green(0.0, s)) < 1e-12);
      CHECK(std::abs(kern.retarded_green(1e-12, s)) < 1e-10);
    }
  }
}

TEST_CASE("equal-time commutator vanishes up to L = 512") {
  const ResponseKernel kern(512, 1.0);
  for (int s : {1, 17, 200, 511}) {
    CHECK(std::abs(kern.retarded_green(0.0, s)) < 1e-10);
    CHECK(std::abs(kern.retarded_green(1e-12, s)) < 1e-10);
  }
}

TEST_CASE("ring reflection symmetry G(t, s) = G(t, L - s)") {
  const ResponseKernel kern(30, 0.4);
  for (int s : {1, 7, 13}) {
    const double a = kern.retarded_green(1.3, s);
    const double b = kern.retarded_green(1.3, 30 - s);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
  // and s is interpreted modulo L
  CHECK(kern.retarded_green(0.9, 7) == kern.retarded_green(0.9, 37));
  CHECK(kern.retarded_green(0.9, 7) == kern.retarded_green(0.9, -23));
}

TEST_CASE("factorized O(L) kernel equals the direct double sum") {
  const ModeSet m = make_modes(128, Sector::NS);
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> Ut(0.0, 4.0);
  std::uniform_int_distribution<int> Us(0, 127);
  std::uniform_real_distribution<double> UT(0.0, 3.0);
  for (int i = 0; i < 12; ++i) {
    const double T = (i % 4 == 0) ? 0.0 : UT(rng);
    const ResponseKernel kern(128, T, ThermalScheme::FactorizedNS);
    const double t = Ut(rng);
    const int s = Us(rng);
    const double fast = kern.retarded_green(t, s);
    const double direct = fock_factorized_green(m, T, t, s);
    CHECK(std::abs(fast - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("exact projected kernel equals the Fock enumeration") {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> Ut(0.05, 3.5);
  for (int L : {6, 10}) {
    std::uniform_int_distribution<int> Us(0, L - 1);
    for (double T : {0.15, 0.6, 2.0}) {
      const ResponseKernel kern(L, T);
      for (int i = 0; i < 3; ++i) {
        const double t = Ut(rng);
        const int s = Us(rng);
        const double fast = kern.retarded_green(t, s);
        const double exact = fock_exact_green(L, T, t, s, true);
        CHECK(std::abs(fast - exact) <=
              1e-12 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("column evaluation agrees with the scalar path") {
  const ResponseTables tables(64);
  for (ThermalScheme sch :
       {ThermalScheme::ExactProjected, ThermalScheme::FactorizedNS}) {
    const ResponseKernel kern(64, 0.8, sch);
    std::vector<double> cols(33);
    kern.green_columns(1.7, 0, 32, tables, cols);
    for (int s = 0; s <= 32; ++s) {
      CHECK(cols[s] ==
            doctest::Approx(kern.retarded_green(1.7, s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("zero-temperature kernel equals the f = 0 specialization") {
  const ModeSet m = make_modes(96, Sector::NS);
  const ResponseKernel exact(96, 0.0);
  const ResponseKernel fact(96, 0.0, ThermalScheme::FactorizedNS);
  for (double t : {0.3, 2.1}) {
    for (int s : {0, 11, 48}) {
      const double ref = fock_factorized_green(m, 0.0, t, s);
      CHECK(std::abs(exact.retarded_green(t, s) - ref) < 1e-13);
      CHECK(std::abs(fact.retarded_green(t, s) - ref) < 1e-13);
    }
  }
}

TEST_CASE("kernel matches the dense oracle exactly through the projected trace") {
  const int L = 6;
  const double T = 0.5, t = 1.0;
  const int s = 2;
  const DenseSpectrum ds = dense_spectrum(L);
  const double gd = dense_thermal_green(ds, T, t, s).real();
  const ResponseKernel exact(L, T);
  CHECK(std::abs(exact.retarded_green(t, s) - gd) < 1e-10);
  // the grand-canonical factorization differs by the parity projection
  const ResponseKernel fact(L, T, ThermalScheme::FactorizedNS);
  CHECK(std::abs(fact.retarded_green(t, s) -
                 fock_exact_green(L, T, t, s, false)) < 1e-10);
}

TEST_CASE("source field profile") {
  const int L = 128;
  SourceProfile p;  // defaults: sigma = 0.25, Omega = 10, M = 0, origin L/2
  p.validate();
  const double A = p.amplitude(L);
  CHECK(A == doctest::Approx(std::sqrt(2.0 * L / 0.0625) / (4.0 * kPi)));
  CHECK(source_field(L / 2, 0.0, p, L) == std::complex<double>(A, 0.0));

  SourceProfile still = p;
  still.omega = 0.0;
  CHECK(source_field(L / 2, still.sigma_t, still, L).real() ==
        doctest::Approx(A * std::exp(-0.5)).epsilon(1e-14));
  CHECK(source_field(L / 2, still.sigma_t, still, L).imag() == 0.0);
  for (int j : {1, 40, 100}) {
    const std::complex<double> v = source_field(j, 0.3, still, L);
    CHECK(v.real() > 0.0);
    CHECK(v.imag() == 0.0);
  }

  // |source| is maximal at (t = 0, j = L/2)
  double best = std::abs(source_field(L / 2, 0.0, p, L));
  for (int j = 1; j <= L; ++j)
    CHECK(std::abs(source_field(j, 0.1, p, L)) <= best + 1e-15);

  SourceProfile bad;
  bad.sigma_t = 1.0;  // 6 sigma_t >= pi
  CHECK_THROWS(bad.validate());
}

TEST_CASE("source origin override recenters the profile") {
  const int L = 64;
  SourceProfile p;
  p.origin = 16;
  p.omega = 0.0;
  CHECK(site_angle(16, 16, L) == 0.0);
  CHECK(std::abs(source_field(16, 0.0, p, L)) ==
        doctest::Approx(p.amplitude(L)));
  // antipode of site 16 picks up |phi| = pi
  CHECK(std::abs(site_angle(48, 16, L)) == doctest::Approx(kPi));
}

TEST_CASE("linear response is exactly linear in the source amplitude") {
  const int L = 32;
  SourceProfile p;
  p.omega = 3.0;
  SourceProfile doubled = p;
  doubled.amp_scale = 2.0;
  const std::complex<double> base = linear_response(L, kPi, 0.3, p, L);
  const std::complex<double> twice = linear_response(L, kPi, 0.3, doubled, L);
  CHECK(std::abs(base) > 0.0);
  CHECK(twice == 2.0 * base);  // bit-exact: every integrand value doubles
}

TEST_CASE("linear response vanishes before the source turns on") {
  const int L = 32;
  SourceProfile p;
  CHECK(linear_response(L, -10.0 * p.sigma_t, 0.5, p, L) ==
        std::complex<double>(0.0, 0.0));
}

TEST_CASE("transported signal at the antipode is nonzero at T = 0, L = 128") {
  SourceProfile p;
  const std::complex<double> v = linear_response(128, kPi, 0.0, p, 128);
  CHECK(std::abs(v) > 1e-8);
}

TEST_CASE("linear response equals the dense-oracle convolution") {
  // small chain, widths rescaled so several sites sit inside the source
  const int L = 6;
  SourceProfile p;
  p.sigma_t = 0.45;
  p.sigma_phi = 1.2;
  p.omega = 1.0;
  const DenseSpectrum ds = dense_spectrum(L);
  for (double T : {0.0, 0.5}) {
    const std::complex<double> dense = dense_linear_response(ds, L, kPi, T, p);
    const std::complex<double> ferm = linear_response(L, kPi, T, p, L);
    CHECK(std::abs(dense) > 0.0);
    CHECK(std::abs(ferm - dense) / std::abs(dense) < 1e-8);
  }
}

TEST_CASE("transport ratio is exactly 1 at T = 0 and decays with T") {
  SourceProfile p;
  CHECK(transport_ratio(0.0, p, 64) == 1.0);
  const double r_mid = transport_ratio(0.16, p, 64);
  const double r_hot = transport_ratio(0.5, p, 64);
  CHECK(r_mid < 0.75);
  CHECK(r_hot < r_mid);
  CHECK(r_hot < 0.2);
}

TEST_CASE("high-temperature transport is strongly suppressed at L = 512") {
  SourceProfile p;
  CHECK(transport_ratio(1.0, p, 512) < 0.05);
}

TEST_CASE("transport sweep matches pointwise transport_ratio") {
  SourceProfile p;
  const int Ls[] = {32};
  const int Ms[] = {0, 2};
  const double Ts[] = {0.1, 0.4};
  const auto pts = transport_sweep(Ls, Ms, Ts, p, 2);
  REQUIRE(pts.size() == 4);
  for (const TransportPoint& tp : pts) {
    SourceProfile q = p;
    q.m_source = tp.m_source;
    CHECK(tp.ratio ==
          doctest::Approx(transport_ratio(tp.T, q, tp.L)).epsilon(1e-12));
  }
}

TEST_CASE("summed response: causality, fast path vs direct sum, oracle") {
  const int L = 6;
  CHECK(summed_response(-0.2, L, 1.0) == 0.0);

  for (ThermalScheme sch :
       {ThermalScheme::ExactProjected, ThermalScheme::FactorizedNS}) {
    const ResponseKernel kern(L, 1.0, sch);
    for (double t : {0.3, 0.7, 1.9}) {
      double direct = 0.0;
      for (int s = 0; s < L; ++s) direct += kern.retarded_green(t, s);
      const double fast = kern.summed(t);
      CHECK(std::abs(fast - direct) <=
            1e-12 * std::max(1.0, std::abs(direct)));
    }
  }

  // exact Fock oracle for the ring sum
  const ResponseKernel exact(L, 1.0);
  double direct_fock = 0.0;
  for (int s = 0; s < L; ++s)
    direct_fock += fock_exact_green(L, 1.0, 0.7, s, true);
  CHECK(std::abs(exact.summed(0.7) - direct_fock) < 1e-12);
}

TEST_CASE("summed response decays at the quasi-normal rate at L = 1000, T = 2") {
  const ResponseKernel kern(1000, 2.0, ThermalScheme::FactorizedNS);
  const double t1 = 0.05, t2 = 0.35;
  const double r1 = std::abs(kern.summed(t1));
  const double r2 = std::abs(kern.summed(t2));
  const double slope = (std::log(r2) - std::log(r1)) / (t2 - t1);
  CHECK(std::abs(slope / (-4.0 * kPi) - 1.0) < 0.1);
}
