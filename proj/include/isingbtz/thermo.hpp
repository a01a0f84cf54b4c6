// thermo.hpp - exact thermal von Neumann entropy of the critical chain and
// its temperature derivative.  The spin-chain trace decomposes as
//
//   Z = Z_NS^even + Z_R^odd
//     = (1/2) [ P_cosh^NS + P_sinh^NS + P_cosh^R - P_sinh^R ]
//
// a signed sum of four log-products (P_sinh^R vanishes identically at
// criticality through the R-sector zero mode).  All beta-derivatives,
// including the product-weight mixing terms, are carried analytically.
#pragma once

#include <span>
#include <vector>

#include "isingbtz/numerics.hpp"

namespace isingbtz {

// ln Z, U = -d(lnZ)/d(beta), and varU = d^2(lnZ)/d(beta)^2 of the combined
// spin-chain trace.
struct ChainThermoData {
  double lnZ = 0.0;
  double U = 0.0;
  double varU = 0.0;
};

ChainThermoData chain_thermo_data(int L, double T);

// ln of the full spin-chain partition function (both projected sectors).
double chain_log_partition(int L, double T);

// S(T) = lnZ + U/T, finite and >= 0.
double chain_entropy(int L, double T);

// dS/dT = C/T with C = varU/T^2 from the analytic second beta-derivative.
double chain_entropy_derivative(int L, double T);

struct EntropyCurve {
  std::vector<double> T;     // ascending
  std::vector<double> S;     // chain entropy
  std::vector<double> dSdT;  // chain entropy derivative
};

EntropyCurve chain_entropy_curve(int L, std::span<const double> Tgrid,
                                 int threads = 0);

// Export grid resolving both the low-T plateau and the minimum region:
// geometric spacing on [lo, 0.1), linear on [0.1, hi].
std::vector<double> hybrid_temperature_grid(double lo, double hi, int n);

// Golden-section minimization of dS/dT on [T_lo, T_hi] to xtol 1e-4.
// `boundary` set in the result means no interior minimum was found.
MinimizeResult locate_dsdt_minimum(int L, double T_lo, double T_hi);

}  // namespace isingbtz
