#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isingbtz/modes.hpp"
#include "isingbtz/numerics.hpp"
#include "isingbtz/oracle.hpp"
#include "isingbtz/thermo.hpp"

using namespace isingbtz;

TEST_CASE("dense Hamiltonian: tracelessness, symmetry, eigenpair residuals") {
  const int L = 4;
  const Eigen::MatrixXd H = dense_hamiltonian(L);
  CHECK(std::abs(H.trace()) < 1e-12);
  CHECK((H - H.transpose()).norm() < 1e-14);

  // global spin flip P = prod X_j commutes with H
  const int dim = 1 << L;
  const int flip = dim - 1;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) P(a ^ flip, a) = 1.0;
  CHECK((H * P - P * H).norm() < 1e-12);

  const DenseSpectrum ds = dense_spectrum(L);
  for (int m = 0; m < dim; ++m) {
    const Eigen::VectorXd v = ds.vectors.col(m);
    CHECK((H * v - ds.energies(m) * v).norm() < 1e-10);
  }
  CHECK((ds.vectors.transpose() * ds.vectors -
         Eigen::MatrixXd::Identity(dim, dim))
            .norm() < 1e-10);
}

TEST_CASE("ground energy at L = 2 equals the NS free-fermion value") {
  const DenseSpectrum ds = dense_spectrum(2);
  const ModeSet ns = make_modes(2, Sector::NS);
  double e0 = 0.0;
  for (double e : ns.eps) e0 -= 0.5 * e;
  CHECK(std::abs(ds.energies(0) - e0) < 1e-10);
}

TEST_CASE("sector completeness: Z_spin = Z_NS^even + Z_R^odd") {
  for (int L : {2, 4, 6, 8}) {
    const DenseSpectrum ds = dense_spectrum(L);
    for (double T : {0.5, 1.0, 5.0, 10.0}) {
      const double lnZ_dense = dense_log_partition(ds, T);
      const double lnZ_ferm =
          logsumexp(log_partition_sector(L, T, Sector::NS, Parity::Even),
                    log_partition_sector(L, T, Sector::R, Parity::Odd));
      CHECK(std::abs(lnZ_dense - lnZ_ferm) /
                std::max(1.0, std::abs(lnZ_dense)) <
            1e-9);
    }
  }
}

TEST_CASE("dense entropy limits and cross-check with the projected route") {
  const DenseSpectrum ds6 = dense_spectrum(6);
  CHECK(std::abs(dense_entropy(ds6, 1e4) - 6.0 * std::log(2.0)) < 1e-4);
  for (double T : {0.5, 1.0, 5.0}) {
    CHECK(std::abs(dense_entropy(ds6, T) - chain_entropy(6, T)) < 1e-8);
  }
  const DenseSpectrum ds8 = dense_spectrum(8);
  CHECK(std::abs(dense_entropy(ds8, 1.0) - chain_entropy(8, 1.0)) < 1e-8);
}

TEST_CASE("dense retarded kernel is real and causal") {
  const DenseSpectrum ds = dense_spectrum(4);
  CHECK(dense_thermal_green(ds, 1.0, -0.5, 1) == std::complex<double>(0, 0));
  for (double t : {0.3, 1.7}) {
    const std::complex<double> g = dense_thermal_green(ds, 1.0, t, 2);
    CHECK(std::abs(g.imag()) < 1e-12);
  }
}

TEST_CASE("dense vs parity-projected Fock Green's function at L = 8") {
  const DenseSpectrum ds = dense_spectrum(8);
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> Ut(0.05, 2.5);
  std::uniform_int_distribution<int> Us(0, 7);
  for (int i = 0; i < 4; ++i) {
    const double t = Ut(rng);
    const int s = Us(rng);
    const double gd = dense_thermal_green(ds, 1.0, t, s).real();
    const double gf = fock_exact_green(8, 1.0, t, s, true);
    CHECK(std::abs(gd - gf) < 1e-10);
  }
}

TEST_CASE("projected-Fock matches dense at a reference point, L = 6") {
  const DenseSpectrum ds = dense_spectrum(6);
  const double gd = dense_thermal_green(ds, 0.5, 1.0, 2).real();
  const double gf = fock_exact_green(6, 0.5, 1.0, 2, true);
  CHECK(std::abs(gd - gf) < 1e-10);
}

TEST_CASE("projection error decreases from L = 8 to L = 10 at (t,s,T)=(1,3,1)") {
  const double d8 = std::abs(fock_exact_green(8, 1.0, 1.0, 3, true) -
                             fock_exact_green(8, 1.0, 1.0, 3, false));
  const double d10 = std::abs(fock_exact_green(10, 1.0, 1.0, 3, true) -
                              fock_exact_green(10, 1.0, 1.0, 3, false));
  CHECK(d10 < d8);
}

TEST_CASE("projected and factorized routes coincide in the T -> 0 limit") {
  const int L = 8;
  const ModeSet ns = make_modes(L, Sector::NS);
  for (int s : {1, 3}) {
    const double zero_T = fock_factorized_green(ns, 0.0, 0.8, s);
    CHECK(std::abs(fock_exact_green(L, 1e-4, 0.8, s, true) - zero_T) < 1e-8);
    CHECK(std::abs(fock_exact_green(L, 1e-4, 0.8, s, false) - zero_T) < 1e-8);
    CHECK(std::abs(fock_exact_green(L, 0.0, 0.8, s, true) - zero_T) < 1e-12);
  }
}

TEST_CASE("oracle caps") {
  CHECK_THROWS_AS(dense_spectrum(12), std::invalid_argument);
  CHECK_THROWS_AS(fock_exact_green(16, 1.0, 1.0, 1, true),
                  std::invalid_argument);
}
