// response.hpp - finite-temperature retarded Green's function of the local
// excitation density n_j = (1 - X_j)/2, the localized source, the
// linear-response convolution, and antipodal transport.
//
// The kernel is the thermal average of the double momentum sum
//
//   G_R(t,s) = -(2 th(t)/L^2) < sum_{k,k'} [
//       (u'u - v'v)^2 (1-m_k) m_k'                    sin((e_k - e_k')t + (k'-k)as)
//     + v'u (v'u - vu') ((1-m_k)(1-m_k') - m_k m_k')  sin((e_k + e_k')t - (k'+k)as) ] >
//
// over the physical ensemble Z = Z_NS^even + Z_R^odd.  Two thermal schemes:
//
//  * ExactProjected (default): the parity-projected trace, evaluated exactly
//    by splitting each sector into (1 +- (-1)^N)/2 traces.  Both traces
//    factorize over modes, with occupations f_k = 1/(e^{be}+1) in the (+)
//    trace and g_k = -1/(e^{be}-1) in the (-) trace; the R-sector zero mode
//    makes the R(-) trace collapse to a single momentum sum.  Cost is three
//    double sums plus one single sum, each O(L) per (t, s) after expanding
//    the sines into products of single-k sums.
//
//  * FactorizedNS / FactorizedR: grand-canonical Fermi factorization on one
//    sector's grid (occupation replacements <(1-m)m'> -> (1-f)f' etc.).
//    Cheaper and adequate for sector-insensitive quantities; kept as the
//    sensitivity switch and for oracle comparisons.  At T = 0 both schemes
//    reduce to the NS vacuum expression term by term.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "isingbtz/modes.hpp"

namespace isingbtz {

enum class ThermalScheme { ExactProjected, FactorizedNS, FactorizedR };

// Localized spatiotemporal perturbation
//   J_j(t) = A exp[-t^2/(2 s_t^2) - phi_j^2/(2 s_phi^2) - i Omega t + i M phi_j]
// with phi_j = 2pi j/L - pi and A = sqrt(2L/(s_t s_phi))/(4 pi).
struct SourceProfile {
  double sigma_t = 0.25;
  double sigma_phi = 0.25;
  double omega = 10.0;
  int m_source = 0;
  int origin = -1;        // site index; -1 means L/2
  double amp_scale = 1.0; // multiplies the derived amplitude

  int origin_site(int L) const { return origin < 0 ? L / 2 : origin; }
  double amplitude(int L) const;  // A, recomputed on demand, never stored
  void validate() const;          // widths > 0 and 6 sigma_t < pi
};

// Source amplitude at site j (1..L) and time t.
std::complex<double> source_field(int j, double t, const SourceProfile& p,
                                  int L);

// Angular coordinate of site j relative to the source origin, in (-pi, pi].
double site_angle(int j, int origin, int L);

// cos/sin(ka * s) for every grid momentum and s = 0..L/2, built once per
// ModeSet and shared read-only across threads.
class RingPhaseTable {
 public:
  explicit RingPhaseTable(const ModeSet& m);
  int L() const { return L_; }
  const double* cos_row(long s) const { return c_.data() + s * stride_; }
  const double* sin_row(long s) const { return s_.data() + s * stride_; }

 private:
  int L_ = 0;
  long stride_ = 0;
  std::vector<double> c_, s_;
};

// Phase tables for both sector grids of one chain size.
struct ResponseTables {
  RingPhaseTable ns;
  RingPhaseTable r;
  explicit ResponseTables(int L);
};

// Green's-function evaluator bound to one (L, T, scheme).  Immutable after
// construction; all methods are const and thread-safe.
class ResponseKernel {
 public:
  ResponseKernel(int L, double T,
                 ThermalScheme scheme = ThermalScheme::ExactProjected);

  int L() const { return L_; }
  double temperature() const { return T_; }
  ThermalScheme scheme() const { return scheme_; }

  // G_R(t, s); s is interpreted modulo L.  O(L) per call.
  double retarded_green(double t, long s) const;

  // G_R(t, s) for the folded range s in [s_lo, s_hi] (0 <= s_lo <= s_hi <=
  // L/2), written to out[s - s_lo].  Uses the phase tables; O(L) per column.
  void green_columns(double t, long s_lo, long s_hi,
                     const ResponseTables& tables,
                     std::span<double> out) const;

  // Spatially summed response R(t) = sum_s G_R(t, s).  The ring sum forces
  // k' = -k, leaving per component -(th(t)/L) sum_k 4u^2v^2 w_k sin(2e_k t)
  // with w = tanh(be/2) for (+) traces and coth(be/2) for the NS (-) trace
  // (4u^2v^2 = cos^2(ka/2) away from the special modes).
  double summed(double t) const;

 private:
  // one factorized trace component: a sector grid, an occupation vector and
  // a normalized ensemble weight
  struct Component {
    bool on_ns_grid = true;
    double weight = 0.0;
    std::vector<double> u2p, u2q, v2p, v2q, uvp, uvq;  // g*(1-x), g*x products
    std::vector<double> ring;  // 4u^2v^2 (1-2x) for the summed fast path
  };

  int L_ = 0;
  double T_ = 0.0;
  ThermalScheme scheme_ = ThermalScheme::ExactProjected;
  ModeSet ns_, r_;
  std::vector<Component> comps_;
  double w_rminus_ = 0.0;             // P^-_R / Z, ExactProjected only
  std::vector<double> rminus_coeff_;  // (u^2 - v^2) on the R grid, 0 at ka=0
};

// G_R(t, s) at temperature T for a chain of L sites.
double retarded_green(double t, long s, int L, double T,
                      ThermalScheme scheme = ThermalScheme::ExactProjected);

// delta<n_target(t_eval)> = -sum_j int dt J_j(t) G_R(t_eval - t, target - j).
// Trapezoid quadrature on [-6 s_t, min(t_eval, 6 s_t)] refined to 1e-6
// relative; sites with |phi_j| > 6 s_phi are dropped (weight < e^-18).
std::complex<double> linear_response(
    int target, double t_eval, double T, const SourceProfile& p, int L,
    ThermalScheme scheme = ThermalScheme::ExactProjected);

// |response(T)| / |response(T = 0)| at the antipode, t_trans = pi.  The
// denominator uses the exact NS vacuum, so the ratio is 1 at T = 0
// identically.
double transport_ratio(double T, const SourceProfile& p, int L,
                       ThermalScheme scheme = ThermalScheme::ExactProjected);

// R(t) for the chain of length L at temperature T.  Defaults to the
// grand-canonical NS form -(th(t)/L) sum_k cos^2(ka/2) tanh(e_k/2T) sin(2e_k t),
// the reduction used for the relaxation-rate analysis; the exact projected
// ensemble adds a non-decaying component of relative weight
// Z^-_NS/Z ~ exp(-pi^2 T/2)/2 that sits beneath the quasi-normal decay.
double summed_response(double t, int L, double T,
                       ThermalScheme scheme = ThermalScheme::FactorizedNS);

struct TransportPoint {
  double T = 0.0;
  int L = 0;
  int m_source = 0;
  double ratio = 0.0;
};

// Cartesian sweep over (L, M, T) with the T = 0 denominator computed once
// per (L, M) series; grid points evaluated in parallel, each writing only
// its own slot.  Rows ordered by (L, M, T).
std::vector<TransportPoint> transport_sweep(
    std::span<const int> Ls, std::span<const int> Ms,
    std::span<const double> Ts, const SourceProfile& base, int threads = 0,
    ThermalScheme scheme = ThermalScheme::ExactProjected);

}  // namespace isingbtz
