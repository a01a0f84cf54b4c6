#include "isingbtz/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isingbtz/modes.hpp"

namespace isingbtz {

namespace {

// ln, d/dbeta, d^2/dbeta^2 of one log-product prod_k 2{cosh,sinh}(beta eps/2).
struct LogProduct {
  double ln = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  bool vanishes = false;  // sinh product with a zero mode
};

LogProduct cosh_product(const ModeSet& m, double beta) {
  LogProduct p;
  for (double e : m.eps) {
    const double x = 0.5 * beta * e;
    const double he = 0.5 * e;
    p.ln += log2cosh(x);
    p.d1 += he * std::tanh(x);
    // sech^2(x), underflows cleanly for large x
    const double ex = std::exp(-x);
    const double sech = 2.0 * ex / (1.0 + ex * ex);
    p.d2 += he * he * sech * sech;
  }
  return p;
}

LogProduct sinh_product(const ModeSet& m, double beta) {
  LogProduct p;
  for (double e : m.eps) {
    if (e == 0.0) {
      p.vanishes = true;
      return p;
    }
    const double x = 0.5 * beta * e;
    const double he = 0.5 * e;
    p.ln += log2sinh(x);
    p.d1 += he / std::tanh(x);
    const double ex = std::exp(-x);
    const double csch = 2.0 * ex / (1.0 - ex * ex);
    p.d2 -= he * he * csch * csch;
  }
  return p;
}

}  // namespace

ChainThermoData chain_thermo_data(int L, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("chain_thermo: need T > 0");
  const double beta = 1.0 / T;
  const ModeSet ns = make_modes(L, Sector::NS);
  const ModeSet r = make_modes(L, Sector::R);

  // Z = (1/2)[Qc_NS + Qs_NS + Qc_R - Qs_R]; collect the surviving signed
  // products (Qs_R = 0 at criticality).
  struct Term {
    double sign, ln, d1, d2;
  };
  std::vector<Term> terms;
  auto add = [&terms](double sign, const LogProduct& p) {
    if (!p.vanishes) terms.push_back({sign, p.ln, p.d1, p.d2});
  };
  add(+1.0, cosh_product(ns, beta));
  add(+1.0, sinh_product(ns, beta));
  add(+1.0, cosh_product(r, beta));
  {
    LogProduct sr = sinh_product(r, beta);
    add(-1.0, sr);
  }

  double lnmax = terms.front().ln;
  for (const Term& t : terms) lnmax = std::max(lnmax, t.ln);

  // Signed weights W_i = s_i Q_i / sum_j s_j Q_j;
  // dlnZ/dbeta = sum W_i d1_i,  d2lnZ/dbeta2 = sum W_i (d2_i + d1_i^2) - (dlnZ/dbeta)^2.
  double zsum = 0.0;
  for (const Term& t : terms) zsum += t.sign * std::exp(t.ln - lnmax);
  if (!(zsum > 0.0)) throw numeric_error("chain_thermo: nonpositive Z");

  double mean_d1 = 0.0, mean_sq = 0.0;
  for (const Term& t : terms) {
    const double w = t.sign * std::exp(t.ln - lnmax) / zsum;
    mean_d1 += w * t.d1;
    mean_sq += w * (t.d2 + t.d1 * t.d1);
  }

  constexpr double ln2 = 0.6931471805599453094;
  ChainThermoData out;
  out.lnZ = lnmax + std::log(zsum) - ln2;
  out.U = -mean_d1;
  out.varU = mean_sq - mean_d1 * mean_d1;
  if (!std::isfinite(out.lnZ) || !std::isfinite(out.U) ||
      !std::isfinite(out.varU))
    throw numeric_error("chain_thermo: non-finite intermediate");
  return out;
}

double chain_log_partition(int L, double T) {
  return chain_thermo_data(L, T).lnZ;
}

double chain_entropy(int L, double T) {
  const ChainThermoData d = chain_thermo_data(L, T);
  const double S = d.lnZ + d.U / T;
  // exact S is >= 0; roundoff can leave a few ulps of negative residue deep
  // in the low-T plateau
  return std::max(S, 0.0);
}

double chain_entropy_derivative(int L, double T) {
  const ChainThermoData d = chain_thermo_data(L, T);
  return d.varU / (T * T * T);  // C/T with C = varU/T^2
}

EntropyCurve chain_entropy_curve(int L, std::span<const double> Tgrid,
                                 int threads) {
  EntropyCurve c;
  c.T.assign(Tgrid.begin(), Tgrid.end());
  c.S.resize(c.T.size());
  c.dSdT.resize(c.T.size());
  parallel_for(c.T.size(), threads, [&](std::size_t i) {
    const ChainThermoData d = chain_thermo_data(L, c.T[i]);
    c.S[i] = std::max(d.lnZ + d.U / c.T[i], 0.0);
    c.dSdT[i] = d.varU / (c.T[i] * c.T[i] * c.T[i]);
  });
  return c;
}

std::vector<double> hybrid_temperature_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 4)
    throw std::invalid_argument("hybrid_temperature_grid: bad range");
  const double split = std::min(0.1, 0.5 * (lo + hi));
  std::vector<double> g;
  g.reserve(n);
  if (split <= lo) {
    for (int i = 0; i < n; ++i)
      g.push_back(lo + (hi - lo) * i / static_cast<double>(n - 1));
    return g;
  }
  const int n_geo = std::max(2, (3 * n) / 8);  // low-T plateau
  const int n_lin = n - n_geo;                 // minimum region and above
  for (int i = 0; i < n_geo; ++i)
    g.push_back(lo * std::pow(split / lo, i / static_cast<double>(n_geo)));
  for (int i = 0; i < n_lin; ++i)
    g.push_back(split + (hi - split) * i / static_cast<double>(n_lin - 1));
  return g;
}

MinimizeResult locate_dsdt_minimum(int L, double T_lo, double T_hi) {
  if (!(0.0 < T_lo && T_lo < T_hi))
    throw std::invalid_argument("locate_dsdt_minimum: need 0 < T_lo < T_hi");
  return golden_section_minimize(
      [L](double T) { return chain_entropy_derivative(L, T); }, T_lo, T_hi,
      1e-4);
}

}  // namespace isingbtz
