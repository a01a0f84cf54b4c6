// ode.hpp - embedded Dormand-Prince 5(4) integrator with adaptive step-size
// control.  Integrates dy/dx = f(x, y) from x0 to x1 (either direction) and
// reports each accepted step to an observer, which may stop the run early.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "isingbtz/numerics.hpp"

namespace isingbtz {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_max = std::numeric_limits<double>::infinity();
  double h_init = 0.0;  // 0 -> automatic
};

// rhs:      void(double x, const std::array<double,N>& y, std::array<double,N>& dy)
// observer: bool(double x, const std::array<double,N>& y)  -- return false to stop
template <std::size_t N, typename Rhs, typename Observer>
void rk45_integrate(Rhs&& rhs, double x0, double x1, std::array<double, N>& y,
                    const OdeOptions& opt, Observer&& observer) {
  using State = std::array<double, N>;
  if (x0 == x1) return;
  const double dir = (x1 > x0) ? 1.0 : -1.0;

  // Dormand-Prince coefficients
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                   e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

  double x = x0;
  double span = std::abs(x1 - x0);
  double h = opt.h_init > 0.0 ? std::min(opt.h_init, opt.h_max)
                              : std::min(span / 100.0, opt.h_max);

  State k1, k2, k3, k4, k5, k6, k7, yt, y5;
  while (dir * (x1 - x) > 0.0) {
    h = std::min(h, opt.h_max);
    double hs = dir * h;
    if (dir * (x + hs - x1) > 0.0) hs = x1 - x;  // clamp final step

    if (std::abs(hs) <= 16.0 * std::numeric_limits<double>::epsilon() *
                            std::max(std::abs(x), 1.0)) {
      throw numeric_error("rk45: step size underflow at x = " +
                          std::to_string(x));
    }

    rhs(x, y, k1);
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + hs * a21 * k1[i];
    rhs(x + c2 * hs, yt, k2);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    rhs(x + c3 * hs, yt, k3);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(x + c4 * hs, yt, k4);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] +
              hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(x + c5 * hs, yt, k5);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                           a64 * k4[i] + a65 * k5[i]);
    rhs(x + hs, yt, k6);
    for (std::size_t i = 0; i < N; ++i)
      y5[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                           b6 * k6[i]);
    rhs(x + hs, y5, k7);

    // error = 5th-order solution minus embedded 4th-order solution
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double y4i = y[i] + hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                      e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc =
          opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      const double d = (y5[i] - y4i) / sc;
      err += d * d;
    }
    err = std::sqrt(err / static_cast<double>(N));

    if (err <= 1.0) {
      x += hs;
      y = y5;
      if (!observer(x, y)) return;
      const double grow =
          (err == 0.0) ? 5.0
                       : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
      h = std::abs(hs) * grow;
    } else {
      h = std::abs(hs) * std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
}

}  // namespace isingbtz
