// modes.hpp - single-particle data of the critical transverse-field Ising
// chain after the Jordan-Wigner / Bogoliubov solution:
//
//   H = -(L/4pi) sum_j (Z_j Z_{j+1} + X_j)  ->  sum_k eps_k (g+_k g_k - 1/2)
//
// per fermion sector (NS: antiperiodic, R: periodic), with
//   eps_k = (L/pi) |sin(ka/2)|,   a = 2pi/L,   J = L/(4pi)
//
// Units: hbar = k_B = 1, CFT circle of circumference 2pi.
#pragma once

#include <utility>
#include <vector>

namespace isingbtz {

enum class Sector { NS, R };
enum class Parity { Even, Odd };

// One fermion sector's momentum grid with dispersion and Bogoliubov angles.
// Immutable after construction; safe to share across threads.
struct ModeSet {
  int L = 0;
  Sector sector = Sector::NS;
  std::vector<double> ka;   // lattice momenta k*a in (-pi, pi], ascending
  std::vector<double> eps;  // eps_k >= 0, eps_{-k} = eps_k bit-exactly
  std::vector<double> u;    // u_{-k} = u_k
  std::vector<double> v;    // v_{-k} = -v_k, sign(v) = sign(sin ka)
};

// L momenta of one Brillouin zone: NS ka = 2pi(n+1/2)/L, R ka = 2pi n/L.
// Rejects odd or nonpositive L.
ModeSet momentum_grid(int L, Sector sector);

// Grid plus dispersion, u, v filled in.
ModeSet make_modes(int L, Sector sector);

// eps = (L/pi)|sin(ka/2)|; algebraically 2J sqrt(2-2cos ka) at criticality,
// evaluated in the cancellation-free form.
double dispersion(double ka, int L);

// Bogoliubov (u, v) at criticality; u^2+v^2 = 1, special-cased to (1, 0) at
// ka = 0 and ka = +-pi.  Independent of L once expressed in ka.
std::pair<double, double> bogoliubov(double ka);

// Fermi factor 1/(1+e^{eps/T}); T = 0 handled as the exact limit
// (0 for eps > 0, 1/2 for eps = 0).  Overflow-safe for large eps/T.
double fermi(double eps, double T);

struct ThermalOccupation {
  double T = 0.0;
  std::vector<double> f;  // per-mode Fermi factors, aligned with ModeSet
};

ThermalOccupation thermal_occupation(const ModeSet& modes, double T);

// ln of the parity-projected sector partition function
//   Z = (1/2) [ prod_k 2cosh(eps_k/2T) +- prod_k 2sinh(eps_k/2T) ]
// (+ even, - odd), in log-domain arithmetic.  The R sector's eps = 0 mode
// kills the sinh product exactly.  Requires T > 0.
double log_partition_sector(int L, double T, Sector sector, Parity parity);

}  // namespace isingbtz
