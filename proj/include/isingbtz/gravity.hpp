// gravity.hpp - closed-form quantities of the dual thermal-AdS3 / BTZ
// description.  The two saddle weights are
//
//   Z_AdS(T) = e^{1/(8GT)},   Z_BTZ(T) = e^{pi^2 l^2 T / (2G)}
//
// and everything here (entropy, Hawking-Page point, quasi-normal decay,
// higher-curvature relation) follows from them analytically.
#pragma once

#include <complex>
#include <utility>

namespace isingbtz {

enum class GravFlavor { Classical, Effective };

struct GravParams {
  double ell = 1.0;  // AdS radius
  double G = 3.0;    // Newton constant
  GravFlavor flavor = GravFlavor::Classical;

  static GravParams classical() { return {1.0, 3.0, GravFlavor::Classical}; }
  static GravParams effective(double ell, double G) {
    return {ell, G, GravFlavor::Effective};
  }
};

// (a, b) = (ln Z_AdS, ln Z_BTZ) = (1/(8GT), pi^2 l^2 T / (2G)).  T = 0 is
// rejected; use ads_weight for the T -> 0 limit.
std::pair<double, double> log_weights(double T, const GravParams& g);

// Z_AdS / (Z_AdS + Z_BTZ) = 1/(1 + e^{b-a}); returns 1 at T = 0.
double ads_weight(double T, const GravParams& g);

// Complement, exactly 1 - ads_weight.
double btz_weight(double T, const GravParams& g);

// T_HP = 1/(2 pi l), where the two saddles exchange dominance.
double hawking_page_temperature(double ell);

// S = ln Z + T d(ln Z)/dT for ln Z = logsumexp(a, b); S -> 0 as T -> 0 and
// S -> pi^2 l^2 T / G as T -> infinity.
double grav_entropy(double T, const GravParams& g);

// Analytic dS/dT; reduces to 2B w_b + w_a w_b T (A/T^2 + B)^2 with
// A = 1/(8G), B = pi^2 l^2/(2G).  Has its interior minimum at T ~ T_HP.
double grav_entropy_derivative(double T, const GravParams& g);

// Quasi-normal-mode data: operator scaling dimension and Hawking
// temperature (equal to the boundary temperature).
struct QnmSpec {
  double Delta = 1.0;  // density operator
  double T_H = 0.0;
};

// Lowest scalar quasi-normal frequency, purely decaying: -i 2 pi T Delta.
std::complex<double> qnm_frequency(double T, double Delta);
inline std::complex<double> qnm_frequency(const QnmSpec& q) {
  return qnm_frequency(q.T_H, q.Delta);
}

// |Im omega_QNM| = 2 pi T Delta, the decay rate of the boundary response.
double qnm_decay_rate(double T, double Delta);

// Late-time offset of the summed response, exp(-pi^2 T / 2) / 2.
double qnm_offset(double T);

// Higher-curvature consistency relation G_cl^2/G_eff^2 + 3 = 4 l_eff^2/l_cl^2
// solved for G_eff (positive root).  Requires 4 (l_eff/l_cl)^2 > 3.
double higher_curvature_G(double ell_eff, double ell_cl, double G_cl);

}  // namespace isingbtz
