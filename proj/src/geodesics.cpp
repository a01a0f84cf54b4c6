#include "isingbtz/geodesics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "isingbtz/ode.hpp"

namespace isingbtz {

namespace {
constexpr double kPi = std::numbers::pi;

void check_ads_launch(const GeodesicParams& p) {
  if (!(p.ell > 0.0)) throw std::invalid_argument("geodesic: ell must be > 0");
  if (!(p.Omega > 0.0))
    throw std::invalid_argument("geodesic: Omega must be > 0");
  if (!(p.Omega * p.Omega > p.M_ang * p.M_ang))
    throw std::invalid_argument(
        "geodesic: boundary launch requires Omega^2 > M^2");
}

double compactify(double rho, double ell) {
  return rho / std::sqrt(rho * rho + ell * ell);
}
}  // namespace

GeoPoint ads_null_geodesic(double lt, const GeodesicParams& p) {
  check_ads_launch(p);
  const double l2 = p.ell * p.ell;
  const double D = p.Omega * p.Omega - p.M_ang * p.M_ang;
  GeoPoint g;
  g.rho = std::sqrt((l2 * p.M_ang * p.M_ang + lt * lt / l2) / D);
  g.t = 0.5 * kPi + std::atan(lt / (l2 * p.Omega));
  if (p.M_ang > 0.0)
    g.phi = 0.5 * kPi + std::atan(lt / (l2 * p.M_ang));
  else if (p.M_ang < 0.0)
    g.phi = -(0.5 * kPi + std::atan(lt / (l2 * -p.M_ang)));
  else
    g.phi = lt < 0.0 ? 0.0 : (lt > 0.0 ? kPi : 0.5 * kPi);
  return g;
}

double ads_arrival_time_numeric(const GeodesicParams& p, double rho_max) {
  check_ads_launch(p);
  if (!(rho_max > 0.0))
    throw std::invalid_argument("ads_arrival_time_numeric: rho_max must be > 0");
  const double l2 = p.ell * p.ell;
  const double D = p.Omega * p.Omega - p.M_ang * p.M_ang;
  const double rho_min2 = l2 * p.M_ang * p.M_ang / D;
  if (!(rho_max * rho_max > rho_min2))
    throw std::invalid_argument("ads_arrival_time_numeric: rho_max below turning point");
  const double u_max = std::sqrt(rho_max * rho_max - rho_min2);

  // In u = sqrt(rho^2 - rho_min^2) the radial equation is smooth through the
  // turning point:  dt/du = l W / ((l^2 + rho_min^2 + u^2) sqrt(D)).
  const double sqD = std::sqrt(D);
  auto rhs = [&](double u, const std::array<double, 1>& /*y*/,
                 std::array<double, 1>& dy) {
    dy[0] = p.ell * p.Omega / ((l2 + rho_min2 + u * u) * sqD);
  };
  std::array<double, 1> y{0.0};
  OdeOptions opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-14;
  rk45_integrate<1>(rhs, -u_max, u_max, y, opt,
                    [](double, const std::array<double, 1>&) { return true; });
  return y[0];
}

double ads_arrival_time(const GeodesicParams& p, double rho_max) {
  if (rho_max <= 0.0) rho_max = 1e6 * p.ell;
  const double t_full = ads_arrival_time_numeric(p, rho_max);
  const double t_half = ads_arrival_time_numeric(p, 0.5 * rho_max);
  return 2.0 * t_full - t_half;  // leading 1/rho_max error cancels
}

GeoClass btz_classify(const GeodesicParams& p) {
  if (!(p.rho_h > 0.0))
    throw std::invalid_argument("btz_classify: rho_h must be > 0");
  if (!(p.ell > 0.0) || !(p.Omega > 0.0))
    throw std::invalid_argument("btz_classify: need ell > 0, Omega > 0");
  const double lhs = p.Omega * p.Omega * p.ell * p.ell;
  if (lhs <= p.M_ang * p.M_ang) return GeoClass::NotBoundaryLaunchable;
  return GeoClass::Captured;
}

GeodesicTrajectory btz_integrate(const GeodesicParams& p, double rho_start,
                                 double eps_stop) {
  const GeoClass cls = btz_classify(p);
  if (cls != GeoClass::Captured)
    throw std::invalid_argument("btz_integrate: ray is not boundary-launchable");
  if (!(rho_start > p.rho_h))
    throw std::invalid_argument("btz_integrate: rho_start must exceed rho_h");
  if (!(eps_stop > 0.0))
    throw std::invalid_argument("btz_integrate: eps_stop must be > 0");

  const double l2 = p.ell * p.ell;
  const double rho_end = p.rho_h * (1.0 + eps_stop);
  GeodesicTrajectory traj;
  traj.classification = cls;

  double max_res = 0.0;
  auto f_of = [&](double rho) { return (rho * rho - p.rho_h * p.rho_h) / l2; };
  auto rhs = [&](double rho, const std::array<double, 2>& /*y*/,
                 std::array<double, 2>& dy) {
    const double f = f_of(rho);
    const double R = std::sqrt(rho * rho * p.Omega * p.Omega -
                               p.M_ang * p.M_ang * f);
    dy[0] = -p.Omega * rho / (f * R);       // dt/drho, ingoing branch
    dy[1] = -p.M_ang / (rho * R);           // dphi/drho
  };

  auto record = [&](double rho, const std::array<double, 2>& y) {
    traj.samples.push_back(
        {rho, y[0], rho, y[1], compactify(rho, p.ell)});
    // null residual of the rho-parametrized tangent (dt/drho, 1, dphi/drho)
    const double f = f_of(rho);
    std::array<double, 2> dy;
    rhs(rho, y, dy);
    const double a = -f * dy[0] * dy[0];
    const double b = 1.0 / f;
    const double c = rho * rho * dy[1] * dy[1];
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    max_res = std::max(max_res, std::abs(a + b + c) / scale);
    return true;
  };

  std::array<double, 2> y{0.0, 0.0};
  OdeOptions opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-14;
  opt.h_max = (rho_start - rho_end) / 200.0;
  record(rho_start, y);
  rk45_integrate<2>(rhs, rho_start, rho_end, y, opt, record);
  traj.max_null_residual = max_res;
  return traj;
}

GeodesicTrajectory ads_trajectory(const GeodesicParams& p, double rho_max,
                                  int n_samples) {
  check_ads_launch(p);
  if (n_samples < 2)
    throw std::invalid_argument("ads_trajectory: need at least 2 samples");
  const double l2 = p.ell * p.ell;
  const double D = p.Omega * p.Omega - p.M_ang * p.M_ang;
  // lambda_tilde at rho_max (boundary cutoff)
  const double lt_max =
      std::sqrt(std::max(0.0, l2 * (D * rho_max * rho_max -
                                    l2 * p.M_ang * p.M_ang)));
  GeodesicTrajectory traj;
  traj.classification = GeoClass::ReachesAntipode;
  // uniform in atan(lt/(l^2 W)) so t is sampled uniformly
  const double amax = std::atan(lt_max / (l2 * p.Omega));
  for (int i = 0; i < n_samples; ++i) {
    const double a = -amax + 2.0 * amax * i / (n_samples - 1);
    const double lt = l2 * p.Omega * std::tan(a);
    const GeoPoint g = ads_null_geodesic(lt, p);
    traj.samples.push_back({lt, g.t, g.rho, g.phi, compactify(g.rho, p.ell)});
  }
  return traj;
}

GeodesicTrajectory ads_integrate_numeric(const GeodesicParams& p,
                                         double rho_max) {
  check_ads_launch(p);
  const double l2 = p.ell * p.ell;
  const double D = p.Omega * p.Omega - p.M_ang * p.M_ang;
  const double sqD = std::sqrt(D);
  const double rho_min2 = l2 * p.M_ang * p.M_ang / D;
  if (!(rho_max * rho_max > rho_min2))
    throw std::invalid_argument("ads_integrate_numeric: rho_max below turning point");
  const double u_max = std::sqrt(rho_max * rho_max - rho_min2);

  // start on the closed-form solution at the ingoing boundary cutoff
  const double lt0 = -p.ell * sqD * u_max;
  const GeoPoint start = ads_null_geodesic(lt0, p);

  GeodesicTrajectory traj;
  traj.classification = GeoClass::ReachesAntipode;
  double max_res = 0.0;
  const double aM = std::abs(p.M_ang);

  auto rhs = [&](double u, const std::array<double, 2>& /*y*/,
                 std::array<double, 2>& dy) {
    const double rho2 = rho_min2 + u * u;
    dy[0] = p.ell * p.Omega / ((l2 + rho2) * sqD);
    dy[1] = p.M_ang != 0.0 ? p.ell * aM / (rho2 * sqD) : 0.0;
  };

  auto record = [&](double u, const std::array<double, 2>& y) {
    const double rho2 = rho_min2 + u * u;
    const double rho = std::sqrt(rho2);
    double phi = p.M_ang > 0.0 ? y[1] : (p.M_ang < 0.0 ? -y[1] : y[1]);
    if (p.M_ang == 0.0 && u >= 0.0) phi += kPi;  // radial ray crosses the center
    traj.samples.push_back(
        {p.ell * sqD * u, y[0], rho, phi, compactify(rho, p.ell)});
    if (rho > 0.0) {
      std::array<double, 2> dy;
      rhs(u, y, dy);
      const double h = l2 + rho2;
      const double a = -h * dy[0] * dy[0];
      const double b = l2 / h * (u / rho) * (u / rho);
      const double c = rho2 * dy[1] * dy[1];
      const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
      if (scale > 0.0)
        max_res = std::max(max_res, std::abs(a + b + c) / scale);
    }
    return true;
  };

  std::array<double, 2> y{start.t, p.M_ang > 0.0 ? start.phi
                                   : (p.M_ang < 0.0 ? -start.phi : 0.0)};
  OdeOptions opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-14;
  opt.h_max = u_max / 50.0;
  record(-u_max, y);
  rk45_integrate<2>(rhs, -u_max, u_max, y, opt, record);
  traj.max_null_residual = max_res;
  return traj;
}

namespace {

// Second-order geodesic equations, state y = (t, tdot, rho, rhodot, phi, phidot).
struct AdsAffineRhs {
  double ell;
  void operator()(double, const std::array<double, 6>& y,
                  std::array<double, 6>& dy) const {
    const double l2 = ell * ell;
    const double rho = y[2];
    const double h = l2 + rho * rho;
    dy[0] = y[1];
    dy[1] = -2.0 * rho / h * y[1] * y[3];
    dy[2] = y[3];
    // Gamma^rho_tt = rho h/l^2, Gamma^rho_rhorho = -rho/h, Gamma^rho_phiphi = -rho h/l^2
    dy[3] = -(rho * h / l2) * y[1] * y[1] + (rho / h) * y[3] * y[3] +
            (rho * h / l2) * y[5] * y[5];
    dy[4] = y[5];
    dy[5] = rho != 0.0 ? -2.0 / rho * y[5] * y[3] : 0.0;
  }
};

struct BtzAffineRhs {
  double ell, rho_h;
  void operator()(double, const std::array<double, 6>& y,
                  std::array<double, 6>& dy) const {
    const double l2 = ell * ell;
    const double rho = y[2];
    const double f = (rho * rho - rho_h * rho_h) / l2;
    const double fp = 2.0 * rho / l2;
    dy[0] = y[1];
    dy[1] = -(fp / f) * y[1] * y[3];
    dy[2] = y[3];
    dy[3] = -0.5 * f * fp * y[1] * y[1] + (0.5 * fp / f) * y[3] * y[3] +
            f * rho * y[5] * y[5];
    dy[4] = y[5];
    dy[5] = rho != 0.0 ? -2.0 / rho * y[5] * y[3] : 0.0;
  }
};

}  // namespace

AffineCheck ads_affine_crosscheck(const GeodesicParams& p, double rho_start) {
  check_ads_launch(p);
  const double l2 = p.ell * p.ell;
  const double h0 = l2 + rho_start * rho_start;
  std::array<double, 6> y{};
  y[0] = 0.0;
  y[1] = p.Omega / h0;
  y[2] = rho_start;
  const double rdot2 =
      (p.Omega * p.Omega - h0 * p.M_ang * p.M_ang / (rho_start * rho_start)) /
      l2;
  if (!(rdot2 > 0.0))
    throw std::invalid_argument("ads_affine_crosscheck: start below turning point");
  y[3] = -std::sqrt(rdot2);  // ingoing
  y[4] = 0.0;
  y[5] = p.M_ang / (rho_start * rho_start);

  AffineCheck chk;
  auto observe = [&](double, const std::array<double, 6>& s) {
    const double hh = l2 + s[2] * s[2];
    const double E = hh * s[1];
    const double M = s[2] * s[2] * s[5];
    const double tt = -hh * s[1] * s[1];
    const double rr = l2 / hh * s[3] * s[3];
    const double pp = s[2] * s[2] * s[5] * s[5];
    const double scale = std::max({std::abs(tt), std::abs(rr), std::abs(pp)});
    chk.max_energy_drift =
        std::max(chk.max_energy_drift, std::abs(E - p.Omega) / p.Omega);
    const double mscale = p.M_ang != 0.0 ? std::abs(p.M_ang) : 1.0;
    chk.max_angmom_drift =
        std::max(chk.max_angmom_drift, std::abs(M - p.M_ang) / mscale);
    chk.max_null_residual =
        std::max(chk.max_null_residual, std::abs(tt + rr + pp) / scale);
    return s[2] <= rho_start;  // stop once back out at the start radius
  };

  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-16;
  // generous span; the observer stops the run on the outgoing branch
  const double lam_max = 4.0 * rho_start / std::sqrt(p.Omega * p.Omega -
                                                     p.M_ang * p.M_ang);
  AdsAffineRhs rhs{p.ell};
  rk45_integrate<6>(rhs, 0.0, lam_max, y, opt, observe);
  return chk;
}

AffineCheck btz_affine_crosscheck(const GeodesicParams& p, double rho_start,
                                  double eps_stop) {
  if (btz_classify(p) != GeoClass::Captured)
    throw std::invalid_argument("btz_affine_crosscheck: ray not launchable");
  const double l2 = p.ell * p.ell;
  const double f0 = (rho_start * rho_start - p.rho_h * p.rho_h) / l2;
  std::array<double, 6> y{};
  y[1] = p.Omega / f0;
  y[2] = rho_start;
  const double rdot2 = p.Omega * p.Omega -
                       f0 * p.M_ang * p.M_ang / (rho_start * rho_start);
  y[3] = -std::sqrt(rdot2);
  y[5] = p.M_ang / (rho_start * rho_start);

  const double rho_end = p.rho_h * (1.0 + eps_stop);
  AffineCheck chk;
  auto observe = [&](double, const std::array<double, 6>& s) {
    const double f = (s[2] * s[2] - p.rho_h * p.rho_h) / l2;
    const double E = f * s[1];
    const double M = s[2] * s[2] * s[5];
    const double tt = -f * s[1] * s[1];
    const double rr = s[3] * s[3] / f;
    const double pp = s[2] * s[2] * s[5] * s[5];
    const double scale = std::max({std::abs(tt), std::abs(rr), std::abs(pp)});
    chk.max_energy_drift =
        std::max(chk.max_energy_drift, std::abs(E - p.Omega) / p.Omega);
    const double mscale = p.M_ang != 0.0 ? std::abs(p.M_ang) : 1.0;
    chk.max_angmom_drift =
        std::max(chk.max_angmom_drift, std::abs(M - p.M_ang) / mscale);
    chk.max_null_residual =
        std::max(chk.max_null_residual, std::abs(tt + rr + pp) / scale);
    return s[2] > rho_end;  // stop at the near-horizon cutoff
  };

  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-16;
  // |rhodot| >= sqrt(W^2 - M^2/l^2) > 0, so the horizon is reached within
  // rho_start / that bound in affine parameter
  const double vmin =
      std::sqrt(p.Omega * p.Omega - p.M_ang * p.M_ang / l2);
  const double lam_max = 4.0 * rho_start / vmin;
  BtzAffineRhs rhs{p.ell, p.rho_h};
  rk45_integrate<6>(rhs, 0.0, lam_max, y, opt, observe);
  return chk;
}

}  // namespace isingbtz
