#include "isingbtz/oracle.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "isingbtz/numerics.hpp"

namespace isingbtz {

namespace {
constexpr double kPi = std::numbers::pi;

void check_dense_L(int L) {
  if (L < 2 || L > 10 || L % 2 != 0)
    throw std::invalid_argument("dense oracle: need even L in [2, 10]");
}

// Boltzmann weights relative to the ground state; T = 0 picks out the
// (possibly degenerate) lowest level.
std::vector<double> boltzmann_weights(const Eigen::VectorXd& E, double T) {
  const double e0 = E(0);
  std::vector<double> w(E.size());
  if (T == 0.0) {
    for (Eigen::Index m = 0; m < E.size(); ++m)
      w[m] = (E(m) - e0 < 1e-12) ? 1.0 : 0.0;
  } else {
    for (Eigen::Index m = 0; m < E.size(); ++m)
      w[m] = std::exp(-(E(m) - e0) / T);
  }
  return w;
}
}  // namespace

Eigen::MatrixXd dense_hamiltonian(int L, double g) {
  check_dense_L(L);
  const int dim = 1 << L;
  const double J = L / (4.0 * kPi);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    double zz = 0.0;
    for (int j = 0; j < L; ++j) {
      const int sj = (a >> j) & 1 ? -1 : 1;
      const int sj1 = (a >> ((j + 1) % L)) & 1 ? -1 : 1;
      zz += sj * sj1;
    }
    H(a, a) = -J * zz;
    for (int j = 0; j < L; ++j) H(a ^ (1 << j), a) += -J * g;
  }
  return H;
}

DenseSpectrum dense_spectrum(int L, double g) {
  DenseSpectrum ds;
  ds.L = L;
  ds.g = g;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_hamiltonian(L, g));
  if (solver.info() != Eigen::Success)
    throw numeric_error("dense_spectrum: eigensolver failed");
  ds.energies = solver.eigenvalues();
  ds.vectors = solver.eigenvectors();
  return ds;
}

Eigen::MatrixXd DenseSpectrum::density_in_eigenbasis(int j) const {
  if (j < 1 || j > L)
    throw std::invalid_argument("density_in_eigenbasis: site out of range");
  const int dim = 1 << L;
  const int bit = 1 << (j - 1);
  // n_j = (I - X_j)/2; X_j V permutes rows by the bit flip
  Eigen::MatrixXd XV(dim, dim);
  for (int a = 0; a < dim; ++a) XV.row(a) = vectors.row(a ^ bit);
  return vectors.transpose() * (0.5 * (vectors - XV));
}

std::complex<double> dense_thermal_green(const DenseSpectrum& ds, double T,
                                         double t, int s) {
  if (T < 0.0) throw std::invalid_argument("dense_thermal_green: T < 0");
  if (t < 0.0) return {0.0, 0.0};
  const int L = ds.L;
  const int sm = ((s % L) + L) % L;
  const Eigen::MatrixXd A = ds.density_in_eigenbasis(1 + sm);
  const Eigen::MatrixXd B = ds.density_in_eigenbasis(1);

  const std::vector<double> w = boltzmann_weights(ds.energies, T);
  double Z = 0.0;
  for (double x : w) Z += x;

  // <[A(t), B]> = (1/Z) sum_{mn} A_mn B_nm e^{i(E_m - E_n)t} (w_m - w_n)
  std::complex<double> acc(0.0, 0.0);
  const Eigen::Index dim = ds.energies.size();
  for (Eigen::Index m = 0; m < dim; ++m) {
    for (Eigen::Index n = 0; n < dim; ++n) {
      const double dw = w[m] - w[n];
      if (dw == 0.0) continue;
      const double om = (ds.energies(m) - ds.energies(n)) * t;
      acc += A(m, n) * B(n, m) * dw *
             std::complex<double>(std::cos(om), std::sin(om));
    }
  }
  return std::complex<double>(0.0, -1.0) * acc / Z;
}

double dense_log_partition(const DenseSpectrum& ds, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("dense_log_partition: T <= 0");
  const std::vector<double> w = boltzmann_weights(ds.energies, T);
  double Z = 0.0;
  for (double x : w) Z += x;
  return -ds.energies(0) / T + std::log(Z);
}

double dense_entropy(const DenseSpectrum& ds, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("dense_entropy: T <= 0");
  const std::vector<double> w = boltzmann_weights(ds.energies, T);
  double Z = 0.0;
  for (double x : w) Z += x;
  double S = 0.0;
  for (double x : w) {
    const double p = x / Z;
    if (p > 1e-300) S -= p * std::log(p);
  }
  return S;
}

std::complex<double> dense_linear_response(const DenseSpectrum& ds, int target,
                                           double t_eval, double T,
                                           const SourceProfile& p) {
  p.validate();
  const int L = ds.L;
  const double lo = -6.0 * p.sigma_t;
  const double hi = std::min(t_eval, 6.0 * p.sigma_t);
  if (!(hi > lo)) return {0.0, 0.0};

  const int origin = p.origin_site(L);
  struct Site {
    int j;
    std::complex<double> w;
  };
  std::vector<Site> sites;
  for (int j = 1; j <= L; ++j) {
    const double phi = site_angle(j, origin, L);
    if (std::abs(phi) > 6.0 * p.sigma_phi) continue;
    const double gauss =
        std::exp(-0.5 * phi * phi / (p.sigma_phi * p.sigma_phi));
    const double ph = p.m_source * phi;
    sites.push_back(
        {j, gauss * std::complex<double>(std::cos(ph), std::sin(ph))});
  }

  auto integrand = [&](double ti, std::span<std::complex<double>> out) {
    std::complex<double> spatial(0.0, 0.0);
    for (const Site& st : sites) {
      const int s = ((target - st.j) % L + L) % L;
      spatial += st.w * dense_thermal_green(ds, T, t_eval - ti, s);
    }
    const double gt = std::exp(-0.5 * ti * ti / (p.sigma_t * p.sigma_t));
    const double ph = -p.omega * ti;
    out[0] = p.amplitude(L) * gt *
             std::complex<double>(std::cos(ph), std::sin(ph)) * spatial;
  };
  return -trapezoid_refine(integrand, 1, lo, hi, 2001, (1 << 15) + 1, 1e-6)[0];
}

double fock_factorized_green(const ModeSet& m, double T, double t, long s) {
  if (t < 0.0) return 0.0;
  const int L = m.L;
  const double sd = static_cast<double>(((s % L) + L) % L);
  std::vector<double> f(L);
  for (int k = 0; k < L; ++k) f[k] = fermi(m.eps[k], T);

  double term1 = 0.0, term2 = 0.0;
  for (int i = 0; i < L; ++i) {    // unprimed k
    for (int j = 0; j < L; ++j) {  // primed k'
      const double A = m.u[j] * m.u[i] - m.v[j] * m.v[i];
      const double B =
          m.v[j] * m.u[i] * (m.v[j] * m.u[i] - m.v[i] * m.u[j]);
      const double s1 =
          std::sin((m.eps[i] - m.eps[j]) * t + (m.ka[j] - m.ka[i]) * sd);
      const double s2 =
          std::sin((m.eps[i] + m.eps[j]) * t - (m.ka[j] + m.ka[i]) * sd);
      term1 += A * A * (1.0 - f[i]) * f[j] * s1;
      term2 += B * (1.0 - f[i] - f[j]) * s2;
    }
  }
  return -2.0 / (static_cast<double>(L) * L) * (term1 + term2);
}

double fock_exact_green(int L, double T, double t, int s, bool projected) {
  if (L < 2 || L > 14 || L % 2 != 0)
    throw std::invalid_argument("fock_exact_green: need even L in [2, 14]");
  if (!projected) return fock_factorized_green(make_modes(L, Sector::NS), T, t, s);
  if (t < 0.0) return 0.0;

  const double sd = static_cast<double>(((s % L) + L) % L);
  const ModeSet ns = make_modes(L, Sector::NS);
  const ModeSet rr = make_modes(L, Sector::R);

  // common reference energy for overflow-safe weights
  auto vac_energy = [](const ModeSet& m) {
    double e0 = 0.0;
    for (double e : m.eps) e0 -= 0.5 * e;
    return e0;
  };
  const double e_ns = vac_energy(ns);
  const double e_r = vac_energy(rr);
  // lowest reachable configuration: NS vacuum (even) or R vacuum + zero mode (odd)
  const double e_ref = std::min(e_ns, e_r);

  double Z = 0.0, num = 0.0;
  for (int sector = 0; sector < 2; ++sector) {
    const ModeSet& m = sector == 0 ? ns : rr;
    const unsigned parity = sector == 0 ? 0u : 1u;  // NS even, R odd
    const double e0 = sector == 0 ? e_ns : e_r;

    // per-pair coefficient and phase matrices (independent of the configuration)
    std::vector<double> C1(L * L), C2(L * L);
    for (int i = 0; i < L; ++i) {
      for (int j = 0; j < L; ++j) {
        const double A = m.u[j] * m.u[i] - m.v[j] * m.v[i];
        const double B =
            m.v[j] * m.u[i] * (m.v[j] * m.u[i] - m.v[i] * m.u[j]);
        C1[i * L + j] =
            A * A *
            std::sin((m.eps[i] - m.eps[j]) * t + (m.ka[j] - m.ka[i]) * sd);
        C2[i * L + j] =
            B * std::sin((m.eps[i] + m.eps[j]) * t - (m.ka[j] + m.ka[i]) * sd);
      }
    }

    const unsigned total = 1u << L;
    for (unsigned mask = 0; mask < total; ++mask) {
      if ((static_cast<unsigned>(std::popcount(mask)) & 1u) != parity) continue;
      double E = e0;
      for (int k = 0; k < L; ++k)
        if (mask & (1u << k)) E += m.eps[k];
      const double w =
          (T == 0.0) ? ((E - e_ref < 1e-12) ? 1.0 : 0.0)
                     : std::exp(-(E - e_ref) / T);
      if (w == 0.0) continue;
      Z += w;

      // term1: k unoccupied, k' occupied; term2: both empty minus both filled
      double t1 = 0.0, t2 = 0.0;
      for (int i = 0; i < L; ++i) {
        const bool mi = mask & (1u << i);
        for (int j = 0; j < L; ++j) {
          const bool mj = mask & (1u << j);
          if (!mi && mj) t1 += C1[i * L + j];
          if (!mi && !mj)
            t2 += C2[i * L + j];
          else if (mi && mj)
            t2 -= C2[i * L + j];
        }
      }
      num += w * (t1 + t2);
    }
  }
  return -2.0 / (static_cast<double>(L) * L) * num / Z;
}

}  // namespace isingbtz
