#include "isingbtz/response.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "isingbtz/numerics.hpp"

namespace isingbtz {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

long mod_L(long s, int L) {
  long r = s % L;
  return r < 0 ? r + L : r;
}

// Accumulates the twelve single-k sums P/Q(g*h) for g in {u^2, v^2, uv},
// h in {sin a, cos a}, weight (1-x) for P and x for Q, with the phase
// a_k = eps_k t - ka s.
struct PqSums {
  double Pu2s = 0, Pu2c = 0, Pv2s = 0, Pv2c = 0, Puvs = 0, Puvc = 0;
  double Qu2s = 0, Qu2c = 0, Qv2s = 0, Qv2c = 0, Quvs = 0, Quvc = 0;

  // term1 + term2 of the double momentum sum, assembled from products of
  // single-k sums:
  //   term1: (u'u - v'v)^2 (1-x)x' sin(a - a')
  //   term2: [u^2 v'^2 - (uv)(u'v')] (1-x-x') sin(a + a'),
  // where sum_{kk'} F(k)G(k')(1-x_k-x_k') = P_F P_G - Q_F Q_G.
  double combine() const {
    const double term1 = (Pu2s * Qu2c - Pu2c * Qu2s) -
                         2.0 * (Puvs * Quvc - Puvc * Quvs) +
                         (Pv2s * Qv2c - Pv2c * Qv2s);
    const double term2 = (Pu2s * Pv2c - Qu2s * Qv2c) +
                         (Pu2c * Pv2s - Qu2c * Qv2s) -
                         2.0 * (Puvs * Puvc - Quvs * Quvc);
    return term1 + term2;
  }
};

}  // namespace

double SourceProfile::amplitude(int L) const {
  return amp_scale * std::sqrt(2.0 * L / (sigma_t * sigma_phi)) / (4.0 * kPi);
}

void SourceProfile::validate() const {
  if (!(sigma_t > 0.0) || !(sigma_phi > 0.0))
    throw config_error("source widths must be positive");
  if (!(6.0 * sigma_t < kPi))
    throw config_error(
        "source support must fit before the transport time: 6 sigma_t < pi");
}

double site_angle(int j, int origin, int L) {
  long rel = mod_L(j - origin, L);
  if (rel > L / 2) rel -= L;  // rel in (-L/2, L/2]
  return kTwoPi * static_cast<double>(rel) / static_cast<double>(L);
}

std::complex<double> source_field(int j, double t, const SourceProfile& p,
                                  int L) {
  if (j < 1 || j > L)
    throw std::invalid_argument("source_field: site out of range");
  const double phi = site_angle(j, p.origin_site(L), L);
  const double gauss = std::exp(-0.5 * t * t / (p.sigma_t * p.sigma_t) -
                                0.5 * phi * phi / (p.sigma_phi * p.sigma_phi));
  const double phase = p.m_source * phi - p.omega * t;
  return p.amplitude(L) * gauss *
         std::complex<double>(std::cos(phase), std::sin(phase));
}

RingPhaseTable::RingPhaseTable(const ModeSet& m) : L_(m.L), stride_(m.L) {
  const long rows = L_ / 2 + 1;
  c_.resize(rows * stride_);
  s_.resize(rows * stride_);
  for (long s = 0; s < rows; ++s) {
    double* cr = c_.data() + s * stride_;
    double* sr = s_.data() + s * stride_;
    for (int k = 0; k < L_; ++k) {
      const double x = m.ka[k] * static_cast<double>(s);
      cr[k] = std::cos(x);
      sr[k] = std::sin(x);
    }
  }
}

ResponseTables::ResponseTables(int L)
    : ns(make_modes(L, Sector::NS)), r(make_modes(L, Sector::R)) {}

ResponseKernel::ResponseKernel(int L, double T, ThermalScheme scheme)
    : L_(L), T_(T), scheme_(scheme) {
  if (T < 0.0) throw std::invalid_argument("ResponseKernel: T must be >= 0");
  ns_ = make_modes(L, Sector::NS);
  r_ = make_modes(L, Sector::R);

  auto make_component = [this](const ModeSet& m, std::span<const double> x,
                               double weight) {
    Component c;
    c.on_ns_grid = (&m == &ns_);
    c.weight = weight;
    const std::size_t n = m.eps.size();
    c.u2p.resize(n);
    c.u2q.resize(n);
    c.v2p.resize(n);
    c.v2q.resize(n);
    c.uvp.resize(n);
    c.uvq.resize(n);
    c.ring.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double u2 = m.u[k] * m.u[k];
      const double v2 = m.v[k] * m.v[k];
      const double uv = m.u[k] * m.v[k];
      const double p = 1.0 - x[k];
      c.u2p[k] = u2 * p;
      c.u2q[k] = u2 * x[k];
      c.v2p[k] = v2 * p;
      c.v2q[k] = v2 * x[k];
      c.uvp[k] = uv * p;
      c.uvq[k] = uv * x[k];
      c.ring[k] = 4.0 * uv * uv * (1.0 - 2.0 * x[k]);
    }
    return c;
  };

  if (scheme == ThermalScheme::FactorizedNS ||
      scheme == ThermalScheme::FactorizedR) {
    const ModeSet& m = scheme == ThermalScheme::FactorizedNS ? ns_ : r_;
    std::vector<double> f(m.eps.size());
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = fermi(m.eps[k], T);
    comps_.push_back(make_component(m, f, 1.0));
    return;
  }

  // ExactProjected: Z = Z_NS^even + Z_R^odd written through the four traces
  //   Z^+_s = prod 2cosh(be/2), Z^-_s = prod 2sinh(be/2)  (Z^-_R = 0),
  // so Z = (Z^+_NS + Z^-_NS + Z^+_R)/2.  Occupations: f in (+) traces,
  // g = -1/(e^{be}-1) in the NS (-) trace; the R (-) trace survives only
  // through terms touching the zero mode and collapses to the single sum
  // (P^-_R / Z) sum_{k != 0} (u^2 - v^2) sin(e t - ka s).
  if (T == 0.0) {
    // limit: NS vacuum; (+) and (-) NS traces carry 1/2 each with f = g = 0
    std::vector<double> zero(ns_.eps.size(), 0.0);
    comps_.push_back(make_component(ns_, zero, 0.5));
    comps_.push_back(make_component(ns_, zero, 0.5));
    w_rminus_ = 0.0;
    return;
  }

  const double beta = 1.0 / T;
  double ln_ns_p = 0.0, ln_ns_m = 0.0, ln_r_p = 0.0, ln_r_m = 0.0;
  for (double e : ns_.eps) {
    ln_ns_p += log2cosh(0.5 * beta * e);
    ln_ns_m += log2sinh(0.5 * beta * e);
  }
  for (double e : r_.eps) {
    ln_r_p += log2cosh(0.5 * beta * e);
    if (e > 0.0) ln_r_m += log2sinh(0.5 * beta * e);  // P^-_R skips the zero mode
  }
  const double lnmax = std::max({ln_ns_p, ln_ns_m, ln_r_p, ln_r_m});
  const double zc = std::exp(ln_ns_p - lnmax) + std::exp(ln_ns_m - lnmax) +
                    std::exp(ln_r_p - lnmax);
  const double w_ns_p = std::exp(ln_ns_p - lnmax) / zc;
  const double w_ns_m = std::exp(ln_ns_m - lnmax) / zc;
  const double w_r_p = std::exp(ln_r_p - lnmax) / zc;
  w_rminus_ = std::exp(ln_r_m - lnmax) / zc;

  std::vector<double> f_ns(ns_.eps.size()), g_ns(ns_.eps.size()),
      f_r(r_.eps.size());
  for (std::size_t k = 0; k < f_ns.size(); ++k) {
    f_ns[k] = fermi(ns_.eps[k], T);
    g_ns[k] = -1.0 / std::expm1(beta * ns_.eps[k]);
  }
  for (std::size_t k = 0; k < f_r.size(); ++k) f_r[k] = fermi(r_.eps[k], T);

  if (w_ns_p > 0.0) comps_.push_back(make_component(ns_, f_ns, w_ns_p));
  if (w_ns_m > 0.0) comps_.push_back(make_component(ns_, g_ns, w_ns_m));
  if (w_r_p > 0.0) comps_.push_back(make_component(r_, f_r, w_r_p));

  rminus_coeff_.resize(r_.eps.size());
  for (std::size_t k = 0; k < rminus_coeff_.size(); ++k) {
    rminus_coeff_[k] = (r_.ka[k] == 0.0)
                           ? 0.0
                           : r_.u[k] * r_.u[k] - r_.v[k] * r_.v[k];
  }
}

double ResponseKernel::retarded_green(double t, long s) const {
  if (t < 0.0) return 0.0;
  const double sd = static_cast<double>(mod_L(s, L_));
  const double pref = -2.0 / (static_cast<double>(L_) * L_);

  double acc = 0.0;
  for (const Component& c : comps_) {
    const ModeSet& m = c.on_ns_grid ? ns_ : r_;
    PqSums q;
    for (int k = 0; k < L_; ++k) {
      const double a = m.eps[k] * t - m.ka[k] * sd;
      const double sa = std::sin(a);
      const double ca = std::cos(a);
      q.Pu2s += c.u2p[k] * sa;
      q.Pu2c += c.u2p[k] * ca;
      q.Pv2s += c.v2p[k] * sa;
      q.Pv2c += c.v2p[k] * ca;
      q.Puvs += c.uvp[k] * sa;
      q.Puvc += c.uvp[k] * ca;
      q.Qu2s += c.u2q[k] * sa;
      q.Qu2c += c.u2q[k] * ca;
      q.Qv2s += c.v2q[k] * sa;
      q.Qv2c += c.v2q[k] * ca;
      q.Quvs += c.uvq[k] * sa;
      q.Quvc += c.uvq[k] * ca;
    }
    acc += c.weight * q.combine();
  }
  if (w_rminus_ > 0.0) {
    double sr = 0.0;
    for (int k = 0; k < L_; ++k) {
      if (rminus_coeff_[k] == 0.0) continue;
      sr += rminus_coeff_[k] * std::sin(r_.eps[k] * t - r_.ka[k] * sd);
    }
    acc += w_rminus_ * sr;
  }
  return pref * acc;
}

void ResponseKernel::green_columns(double t, long s_lo, long s_hi,
                                   const ResponseTables& tables,
                                   std::span<double> out) const {
  if (s_lo < 0 || s_hi > L_ / 2 || s_lo > s_hi)
    throw std::invalid_argument("green_columns: bad column range");
  const std::size_t ncols = s_hi - s_lo + 1;
  if (t < 0.0) {
    std::fill(out.begin(), out.begin() + ncols, 0.0);
    return;
  }
  std::fill(out.begin(), out.begin() + ncols, 0.0);
  const double pref = -2.0 / (static_cast<double>(L_) * L_);

  // per-grid time phases
  std::vector<double> st_ns(L_), ct_ns(L_), st_r, ct_r;
  for (int k = 0; k < L_; ++k) {
    st_ns[k] = std::sin(ns_.eps[k] * t);
    ct_ns[k] = std::cos(ns_.eps[k] * t);
  }
  const bool need_r = w_rminus_ > 0.0 ||
                      std::any_of(comps_.begin(), comps_.end(),
                                  [](const Component& c) {
                                    return !c.on_ns_grid;
                                  });
  if (need_r) {
    st_r.resize(L_);
    ct_r.resize(L_);
    for (int k = 0; k < L_; ++k) {
      st_r[k] = std::sin(r_.eps[k] * t);
      ct_r[k] = std::cos(r_.eps[k] * t);
    }
  }

  for (const Component& c : comps_) {
    const RingPhaseTable& ph = c.on_ns_grid ? tables.ns : tables.r;
    const double* st = c.on_ns_grid ? st_ns.data() : st_r.data();
    const double* ct = c.on_ns_grid ? ct_ns.data() : ct_r.data();
    for (long s = s_lo; s <= s_hi; ++s) {
      const double* cks = ph.cos_row(s);
      const double* sks = ph.sin_row(s);
      PqSums q;
      for (int k = 0; k < L_; ++k) {
        // a = eps t - ka s: sin a = st*ck - ct*sk, cos a = ct*ck + st*sk
        const double sa = st[k] * cks[k] - ct[k] * sks[k];
        const double ca = ct[k] * cks[k] + st[k] * sks[k];
        q.Pu2s += c.u2p[k] * sa;
        q.Pu2c += c.u2p[k] * ca;
        q.Pv2s += c.v2p[k] * sa;
        q.Pv2c += c.v2p[k] * ca;
        q.Puvs += c.uvp[k] * sa;
        q.Puvc += c.uvp[k] * ca;
        q.Qu2s += c.u2q[k] * sa;
        q.Qu2c += c.u2q[k] * ca;
        q.Qv2s += c.v2q[k] * sa;
        q.Qv2c += c.v2q[k] * ca;
        q.Quvs += c.uvq[k] * sa;
        q.Quvc += c.uvq[k] * ca;
      }
      out[s - s_lo] += c.weight * q.combine();
    }
  }
  if (w_rminus_ > 0.0) {
    for (long s = s_lo; s <= s_hi; ++s) {
      const double* cks = tables.r.cos_row(s);
      const double* sks = tables.r.sin_row(s);
      double sr = 0.0;
      for (int k = 0; k < L_; ++k) {
        const double sa = st_r[k] * cks[k] - ct_r[k] * sks[k];
        sr += rminus_coeff_[k] * sa;
      }
      out[s - s_lo] += w_rminus_ * sr;
    }
  }
  for (std::size_t i = 0; i < ncols; ++i) out[i] *= pref;
}

double ResponseKernel::summed(double t) const {
  if (t < 0.0) return 0.0;
  // ring sum forces k' = -k; the R(-) single sum averages to zero over s
  double acc = 0.0;
  for (const Component& c : comps_) {
    const ModeSet& m = c.on_ns_grid ? ns_ : r_;
    double comp = 0.0;
    for (int k = 0; k < L_; ++k)
      comp += c.ring[k] * std::sin(2.0 * m.eps[k] * t);
    acc += c.weight * comp;
  }
  return -acc / static_cast<double>(L_);
}

double retarded_green(double t, long s, int L, double T, ThermalScheme scheme) {
  const ResponseKernel kern(L, T, scheme);
  return kern.retarded_green(t, s);
}

double summed_response(double t, int L, double T, ThermalScheme scheme) {
  const ResponseKernel kern(L, T, scheme);
  return kern.summed(t);
}

namespace {

// Sites within the 6-sigma_phi angular window of the source, with their
// complex spatial weights e^{-phi^2/(2 s_phi^2) + i M phi}.
struct SourceSites {
  std::vector<int> j;
  std::vector<std::complex<double>> w;
};

SourceSites source_site_weights(const SourceProfile& p, int L) {
  SourceSites s;
  const int origin = p.origin_site(L);
  const double cut = 6.0 * p.sigma_phi;
  for (int j = 1; j <= L; ++j) {
    const double phi = site_angle(j, origin, L);
    if (std::abs(phi) > cut) continue;
    const double gauss =
        std::exp(-0.5 * phi * phi / (p.sigma_phi * p.sigma_phi));
    const double ph = p.m_source * phi;
    s.j.push_back(j);
    s.w.push_back(gauss * std::complex<double>(std::cos(ph), std::sin(ph)));
  }
  return s;
}

// Shared implementation: response at `target` for several sources differing
// only in their angular structure, on the same kernel.  Each integrand node
// evaluates one row of G_R columns and dots it with every source.
std::vector<std::complex<double>> response_multi(
    const ResponseKernel& kern, const ResponseTables& tables, int target,
    double t_eval, std::span<const SourceProfile> sources) {
  const int L = kern.L();
  std::vector<SourceSites> sites;
  sites.reserve(sources.size());
  double sigma_t = sources.empty() ? 0.25 : sources[0].sigma_t;
  for (const SourceProfile& p : sources) {
    p.validate();
    if (p.sigma_t != sigma_t)
      throw std::invalid_argument("response_multi: sources must share sigma_t");
    sites.push_back(source_site_weights(p, L));
  }

  const double lo = -6.0 * sigma_t;
  const double hi = std::min(t_eval, 6.0 * sigma_t);
  if (!(hi > lo)) return std::vector<std::complex<double>>(sources.size(), 0.0);

  // folded column range covering every needed separation target - j
  long s_lo = L / 2, s_hi = 0;
  for (const SourceSites& ss : sites)
    for (int j : ss.j) {
      long s = mod_L(target - j, L);
      if (s > L / 2) s = L - s;
      s_lo = std::min(s_lo, s);
      s_hi = std::max(s_hi, s);
    }

  std::vector<double> row(s_hi - s_lo + 1);
  auto integrand = [&](double ti, std::span<std::complex<double>> out) {
    kern.green_columns(t_eval - ti, s_lo, s_hi, tables, std::span<double>(row));
    for (std::size_t m = 0; m < sources.size(); ++m) {
      const SourceProfile& p = sources[m];
      std::complex<double> spatial = 0.0;
      for (std::size_t idx = 0; idx < sites[m].j.size(); ++idx) {
        long s = mod_L(target - sites[m].j[idx], L);
        if (s > L / 2) s = L - s;
        spatial += sites[m].w[idx] * row[s - s_lo];
      }
      const double gt = std::exp(-0.5 * ti * ti / (p.sigma_t * p.sigma_t));
      const double ph = -p.omega * ti;
      const std::complex<double> tf =
          p.amplitude(L) * gt *
          std::complex<double>(std::cos(ph), std::sin(ph));
      out[m] = tf * spatial;
    }
  };

  auto result = trapezoid_refine(integrand, sources.size(), lo, hi, 2001,
                                 (1 << 15) + 1, 1e-6);
  for (auto& r : result) r = -r;
  return result;
}

int antipode_site(const SourceProfile& p, int L) {
  return static_cast<int>(mod_L(p.origin_site(L) + L / 2 - 1, L)) + 1;
}

}  // namespace

std::complex<double> linear_response(int target, double t_eval, double T,
                                     const SourceProfile& p, int L,
                                     ThermalScheme scheme) {
  const ResponseTables tables(L);
  const ResponseKernel kern(L, T, scheme);
  const SourceProfile ps[] = {p};
  return response_multi(kern, tables, target, t_eval, ps)[0];
}

double transport_ratio(double T, const SourceProfile& p, int L,
                       ThermalScheme scheme) {
  if (T < 0.0) throw std::invalid_argument("transport_ratio: T must be >= 0");
  const ResponseTables tables(L);
  const int target = antipode_site(p, L);
  const SourceProfile ps[] = {p};
  const ResponseKernel num_kern(L, T, scheme);
  const ResponseKernel den_kern(L, 0.0, scheme);
  const double num =
      std::abs(response_multi(num_kern, tables, target, kPi, ps)[0]);
  const double den =
      std::abs(response_multi(den_kern, tables, target, kPi, ps)[0]);
  if (den == 0.0)
    throw numeric_error("transport_ratio: vanishing T = 0 response");
  return num / den;
}

std::vector<TransportPoint> transport_sweep(std::span<const int> Ls,
                                            std::span<const int> Ms,
                                            std::span<const double> Ts,
                                            const SourceProfile& base,
                                            int threads, ThermalScheme scheme) {
  std::vector<TransportPoint> out;
  out.reserve(Ls.size() * Ms.size() * Ts.size());
  for (int L : Ls) {
    const ResponseTables tables(L);
    const int target = antipode_site(base, L);

    std::vector<SourceProfile> sources;
    for (int M : Ms) {
      SourceProfile p = base;
      p.m_source = M;
      sources.push_back(p);
    }

    // job 0 is the shared T = 0 denominator; jobs 1.. are the temperatures
    const std::size_t njobs = Ts.size() + 1;
    std::vector<std::vector<std::complex<double>>> values(njobs);
    parallel_for(njobs, threads, [&](std::size_t idx) {
      const double T = idx == 0 ? 0.0 : Ts[idx - 1];
      const ResponseKernel kern(L, T, scheme);
      values[idx] = response_multi(kern, tables, target, kPi, sources);
    });

    for (std::size_t mi = 0; mi < sources.size(); ++mi) {
      const double den = std::abs(values[0][mi]);
      if (den == 0.0)
        throw numeric_error("transport_sweep: vanishing T = 0 response");
      for (std::size_t ti = 0; ti < Ts.size(); ++ti) {
        out.push_back({Ts[ti], L, sources[mi].m_source,
                       std::abs(values[ti + 1][mi]) / den});
      }
    }
  }
  return out;
}

}  // namespace isingbtz
