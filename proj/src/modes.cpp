#include "isingbtz/modes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "isingbtz/numerics.hpp"

namespace isingbtz {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_L(int L) {
  if (L < 2 || L % 2 != 0)
    throw std::invalid_argument("L must be even and >= 2, got " +
                                std::to_string(L));
}
}  // namespace

ModeSet momentum_grid(int L, Sector sector) {
  check_L(L);
  ModeSet m;
  m.L = L;
  m.sector = sector;
  m.ka.reserve(L);
  if (sector == Sector::NS) {
    // n = -L/2 .. L/2-1:  ka = 2pi(n+1/2)/L in (-pi, pi), no 0 or pi
    for (int n = -L / 2; n <= L / 2 - 1; ++n)
      m.ka.push_back(kTwoPi * (n + 0.5) / L);
  } else {
    // n = -L/2+1 .. L/2:  ka = 2pi n/L in (-pi, pi], includes 0 and pi
    for (int n = -L / 2 + 1; n <= L / 2; ++n) {
      if (n == 0)
        m.ka.push_back(0.0);
      else if (n == L / 2)
        m.ka.push_back(kPi);
      else
        m.ka.push_back(kTwoPi * n / L);
    }
  }
  return m;
}

double dispersion(double ka, int L) {
  // |ka|/2 in [0, pi/2], so sin >= 0; evaluating at |ka| makes eps(-k)
  // bit-identical to eps(k).
  return (L / kPi) * std::sin(0.5 * std::abs(ka));
}

std::pair<double, double> bogoliubov(double ka) {
  if (ka == 0.0 || ka == kPi || ka == -kPi) return {1.0, 0.0};
  const double s = std::sin(0.5 * std::abs(ka));
  const double c = std::cos(0.5 * std::abs(ka));
  // At g = 1 the general u = (eps+z)/sqrt(2 eps (eps+z)) collapses to
  // u = sqrt((1+s)/2), v = sign(ka) c / sqrt(2(1+s)).
  const double u = std::sqrt(0.5 * (1.0 + s));
  const double v = std::copysign(c / std::sqrt(2.0 * (1.0 + s)), ka);
  return {u, v};
}

ModeSet make_modes(int L, Sector sector) {
  ModeSet m = momentum_grid(L, sector);
  m.eps.reserve(L);
  m.u.reserve(L);
  m.v.reserve(L);
  for (double ka : m.ka) {
    m.eps.push_back(dispersion(ka, L));
    auto [u, v] = bogoliubov(ka);
    m.u.push_back(u);
    m.v.push_back(v);
  }
  return m;
}

double fermi(double eps, double T) {
  if (eps < 0.0) throw std::invalid_argument("fermi: eps must be >= 0");
  if (T < 0.0) throw std::invalid_argument("fermi: negative temperature");
  if (T == 0.0) return eps > 0.0 ? 0.0 : 0.5;
  const double e = std::exp(-eps / T);
  return e / (1.0 + e);
}

ThermalOccupation thermal_occupation(const ModeSet& modes, double T) {
  ThermalOccupation occ;
  occ.T = T;
  occ.f.reserve(modes.eps.size());
  for (double e : modes.eps) occ.f.push_back(fermi(e, T));
  return occ;
}

double log_partition_sector(int L, double T, Sector sector, Parity parity) {
  if (!(T > 0.0))
    throw std::invalid_argument("log_partition_sector: need T > 0");
  const ModeSet m = make_modes(L, sector);
  const double beta = 1.0 / T;

  double ln_cosh = 0.0;  // ln prod 2cosh(beta eps/2)
  double ln_sinh = 0.0;  // ln prod 2sinh(beta eps/2)
  bool sinh_vanishes = false;
  for (double e : m.eps) {
    const double x = 0.5 * beta * e;
    ln_cosh += log2cosh(x);
    if (e == 0.0)
      sinh_vanishes = true;
    else
      ln_sinh += log2sinh(x);
  }

  constexpr double ln2 = 0.6931471805599453094;
  double lnZ;
  if (sinh_vanishes) {
    lnZ = ln_cosh - ln2;  // sinh product is exactly zero
  } else {
    const double d = ln_sinh - ln_cosh;  // < 0 always
    const double corr = (parity == Parity::Even)
                            ? std::log1p(std::exp(d))
                            : std::log(-std::expm1(d));
    lnZ = ln_cosh - ln2 + corr;
  }
  if (!std::isfinite(lnZ))
    throw numeric_error("log_partition_sector: non-finite result");
  return lnZ;
}

}  // namespace isingbtz
