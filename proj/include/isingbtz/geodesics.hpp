// geodesics.hpp - null geodesics in global AdS3 and in the BTZ black-hole
// spacetime.
//
//   AdS3:  ds^2 = -(l^2+rho^2) dt^2 + l^2/(l^2+rho^2) drho^2 + rho^2 dphi^2
//   BTZ :  ds^2 = -f dt^2 + drho^2/f + rho^2 dphi^2,  f = (rho^2-rho_h^2)/l^2
//
// Boundary-launched AdS rays reach the antipodal point at coordinate time
// pi for every allowed angular momentum; boundary-launched BTZ rays have no
// turning point outside the horizon and are always captured.
#pragma once

#include <vector>

#include "isingbtz/numerics.hpp"

namespace isingbtz {

struct GeodesicParams {
  double Omega = 5.0;  // conserved energy
  double M_ang = 0.0;  // conserved angular momentum
  double ell = 1.0;    // AdS radius
  double rho_h = 0.0;  // horizon radius (0 = pure AdS); rho_h = l sqrt(8 G M_BTZ)
};

enum class GeoClass { ReachesAntipode, Captured, NotBoundaryLaunchable };

struct GeoPoint {
  double t = 0.0;
  double rho = 0.0;
  double phi = 0.0;
};

// Closed-form AdS3 null geodesic in the rescaled affine parameter
//   rho^2 = (l^2 M^2 + lt^2/l^2)/(W^2 - M^2),
//   t = pi/2 + atan(lt/(l^2 W)),  phi = pi/2 + atan(lt/(l^2 M)),
// launched from (t, phi) = (0, 0) at lt -> -inf.  For M < 0 the mirror
// solution (phi -> -phi) is returned; for M = 0 phi jumps 0 -> pi at the
// center crossing.  Requires W^2 > M^2.
GeoPoint ads_null_geodesic(double lambda_tilde, const GeodesicParams& p);

// Numeric boundary-to-boundary coordinate time through the bulk, obtained by
// integrating the radial equation dt/drho (regularized through the turning
// point by u = sqrt(rho^2 - rho_min^2)) from rho_max in and back out.
double ads_arrival_time_numeric(const GeodesicParams& p, double rho_max);

// Arrival time Richardson-extrapolated in 1/rho_max: 2 T(rho_max) - T(rho_max/2).
double ads_arrival_time(const GeodesicParams& p, double rho_max = 0.0);

struct TrajectorySample {
  double x = 0.0;    // integration variable (rho for BTZ, lambda_tilde for AdS)
  double t = 0.0;
  double rho = 0.0;
  double phi = 0.0;
  double r = 0.0;    // compactified rho/sqrt(rho^2+l^2)
};

struct GeodesicTrajectory {
  std::vector<TrajectorySample> samples;  // t strictly increasing
  GeoClass classification = GeoClass::Captured;
  double max_null_residual = 0.0;  // relative residual of g_uv dx^u dx^v
};

// Sign analysis of rhodot^2 = [rho^2(W^2 l^2 - M^2) + M^2 rho_h^2]/(l^2 rho^2):
// W^2 l^2 > M^2 means no turning point outside the horizon -> Captured;
// otherwise the ray cannot start inward from the boundary.
GeoClass btz_classify(const GeodesicParams& p);

// Ingoing branch dt/drho = -W rho/(f sqrt(rho^2 W^2 - M^2 f)), integrated
// from rho_start down to rho_h (1 + eps_stop); t diverges logarithmically at
// the horizon, so the run stops at the cutoff and records the final time.
GeodesicTrajectory btz_integrate(const GeodesicParams& p, double rho_start,
                                 double eps_stop = 1e-6);

// Closed-form AdS trajectory sampled on a uniform-in-atan lambda grid
// (export convenience, same columns as the BTZ trajectories).
GeodesicTrajectory ads_trajectory(const GeodesicParams& p, double rho_max,
                                  int n_samples = 401);

// Numeric AdS trajectory from the regularized radial ODE, initialized on the
// closed-form solution at rho_max (ingoing).  Samples carry x = lambda_tilde
// so they can be compared against ads_null_geodesic point by point.
GeodesicTrajectory ads_integrate_numeric(const GeodesicParams& p,
                                         double rho_max);

// Cross-check mode: second-order geodesic equations integrated in the affine
// parameter from the Christoffel symbols, tracking the conserved energy and
// angular momentum and the null-condition residual.
struct AffineCheck {
  double max_energy_drift = 0.0;  // relative
  double max_angmom_drift = 0.0;  // relative (absolute when M = 0)
  double max_null_residual = 0.0;
};

AffineCheck ads_affine_crosscheck(const GeodesicParams& p, double rho_start);
AffineCheck btz_affine_crosscheck(const GeodesicParams& p, double rho_start,
                                  double eps_stop = 1e-6);

}  // namespace isingbtz
