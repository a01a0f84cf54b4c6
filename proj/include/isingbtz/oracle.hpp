// oracle.hpp - brute-force reference implementations used by tests and the
// acceptance suite: dense spin-chain exact diagonalization (L <= 10) and
// exact fermionic Fock-space enumeration with parity projection (L <= 14).
// Everything here favors transparency over speed; no free-fermion shortcut
// appears in the dense routines.
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "isingbtz/modes.hpp"
#include "isingbtz/response.hpp"

namespace isingbtz {

// Full eigendecomposition of H = -(L/4pi) sum_j (Z_j Z_{j+1} + g X_j) with
// periodic closure, in the computational spin basis (real symmetric).
struct DenseSpectrum {
  int L = 0;
  double g = 1.0;
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXd vectors;   // orthonormal columns

  // n_j = (1 - X_j)/2 rotated to the eigenbasis, sites 1..L.
  Eigen::MatrixXd density_in_eigenbasis(int j) const;
};

DenseSpectrum dense_spectrum(int L, double g = 1.0);

// Dense Hamiltonian matrix itself (for residual checks in tests).
Eigen::MatrixXd dense_hamiltonian(int L, double g = 1.0);

// Lehmann-representation G_R(t, s) = -i th(t) <[n_{1+s}(t), n_1(0)]>_T.
// T = 0 uses the ground state (degenerate levels averaged).
std::complex<double> dense_thermal_green(const DenseSpectrum& ds, double T,
                                         double t, int s);

// ln Tr e^{-H/T} over the full 2^L spin space.
double dense_log_partition(const DenseSpectrum& ds, double T);

// Thermal von Neumann entropy from the dense spectrum.
double dense_entropy(const DenseSpectrum& ds, double T);

// Linear response at `target` by direct convolution of the dense kernel with
// the source (same quadrature and site window as the production path).
std::complex<double> dense_linear_response(const DenseSpectrum& ds, int target,
                                           double t_eval, double T,
                                           const SourceProfile& p);

// Exact evaluation of the configuration-summed retarded kernel over both
// projected sectors (NS even + R odd) when projected = true, or the
// Fermi-factorized NS-sector evaluation when false.  The difference between
// the two quantifies the parity-projection error of the production kernel.
// Enumeration cost is 2^L; L <= 14 enforced.
double fock_exact_green(int L, double T, double t, int s, bool projected);

// Direct O(L^2) double momentum sum with Fermi factors on the given grid; no
// size cap.  Serves as the independent oracle for the O(L)-factorized
// production evaluation.
double fock_factorized_green(const ModeSet& m, double T, double t, long s);

}  // namespace isingbtz
