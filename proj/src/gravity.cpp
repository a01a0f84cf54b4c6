#include "isingbtz/gravity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "isingbtz/numerics.hpp"

namespace isingbtz {

namespace {
constexpr double kPi = std::numbers::pi;

void check_params(const GravParams& g) {
  if (!(g.ell > 0.0) || !(g.G > 0.0))
    throw std::invalid_argument("GravParams: ell and G must be positive");
}
}  // namespace

std::pair<double, double> log_weights(double T, const GravParams& g) {
  check_params(g);
  if (!(T > 0.0))
    throw std::invalid_argument(
        "log_weights: T must be > 0 (AdS exponent diverges at T = 0)");
  const double a = 1.0 / (8.0 * g.G * T);
  const double b = kPi * kPi * g.ell * g.ell * T / (2.0 * g.G);
  return {a, b};
}

double ads_weight(double T, const GravParams& g) {
  check_params(g);
  if (T < 0.0) throw std::invalid_argument("ads_weight: T must be >= 0");
  if (T == 0.0) return 1.0;  // AdS saddle dominates in the limit
  const auto [a, b] = log_weights(T, g);
  const double x = b - a;
  // 1/(1+e^x), stable in both tails
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double btz_weight(double T, const GravParams& g) {
  return 1.0 - ads_weight(T, g);
}

double hawking_page_temperature(double ell) {
  if (!(ell > 0.0))
    throw std::invalid_argument("hawking_page_temperature: ell must be > 0");
  return 1.0 / (2.0 * kPi * ell);
}

double grav_entropy(double T, const GravParams& g) {
  const auto [a, b] = log_weights(T, g);
  const double lnZ = logsumexp(a, b);
  const double wa = ads_weight(T, g);
  const double wb = 1.0 - wa;
  // S = lnZ + T dlnZ/dT = lnZ - w_a a + w_b b  (a' = -a/T, b' = b/T)
  return lnZ - wa * a + wb * b;
}

double grav_entropy_derivative(double T, const GravParams& g) {
  const auto [a, b] = log_weights(T, g);
  const double wa = ads_weight(T, g);
  const double wb = 1.0 - wa;
  const double ap = -a / T;       // da/dT
  const double bp = b / T;        // db/dT
  const double app = 2.0 * a / (T * T);  // d2a/dT2
  // dS/dT = 2(w_a a' + w_b b') + T [w_a a'' + w_a w_b (a'-b')^2];
  // the w_a pieces cancel pairwise since a'' = -2a'/T, leaving
  // dS/dT = 2 w_b b' + T w_a w_b (a'-b')^2 >= 0.
  const double diff = ap - bp;
  return 2.0 * (wa * ap + wb * bp) + T * (wa * app + wa * wb * diff * diff);
}

std::complex<double> qnm_frequency(double T, double Delta) {
  if (T < 0.0 || !(Delta > 0.0))
    throw std::invalid_argument("qnm_frequency: need T >= 0, Delta > 0");
  return {0.0, -2.0 * kPi * T * Delta};
}

double qnm_decay_rate(double T, double Delta) {
  return 2.0 * kPi * T * Delta;
}

double qnm_offset(double T) {
  if (T < 0.0) throw std::invalid_argument("qnm_offset: T must be >= 0");
  return 0.5 * std::exp(-0.5 * kPi * kPi * T);
}

double higher_curvature_G(double ell_eff, double ell_cl, double G_cl) {
  if (!(ell_eff > 0.0) || !(ell_cl > 0.0) || !(G_cl > 0.0))
    throw std::invalid_argument("higher_curvature_G: parameters must be > 0");
  const double r = ell_eff / ell_cl;
  const double radicand = 4.0 * r * r - 3.0;
  if (!(radicand > 0.0))
    throw std::invalid_argument(
        "higher_curvature_G: no real solution, 4(l_eff/l_cl)^2 <= 3 at "
        "l_eff = " +
        std::to_string(ell_eff));
  return G_cl / std::sqrt(radicand);
}

}  // namespace isingbtz
