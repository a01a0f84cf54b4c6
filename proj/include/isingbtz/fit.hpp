// fit.hpp - deterministic least-squares parameter extraction: the
// two-parameter universal transport curve (l_eff, G_eff), the SSE landscape
// over (l, G), and the exponential-plus-offset relaxation fit.
//
// No randomness anywhere: coarse grids plus fixed-geometry Nelder-Mead /
// golden-section refinement, so identical inputs give bitwise-identical
// results.
#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace isingbtz {

struct FitResult {
  std::map<std::string, double> params;
  double sse = 0.0;
  int iterations = 0;
  bool converged = false;
  // half-width per parameter at which the SSE doubles (curvature bracket,
  // not a covariance estimate)
  std::map<std::string, double> bracket;
};

// Fits ratio_i ~ ads_weight(T_i; l, G) over (l, G) by a 50x50 coarse grid on
// [0.5, 3]^2 followed by Nelder-Mead refinement to step tolerance 1e-6.
// Needs >= 4 points; data whose ratio spread is below 0.1 (one plateau) is
// rejected as unidentifiable.
FitResult fit_universal_curve(std::span<const std::pair<double, double>> pts);

struct SseLandscape {
  std::vector<double> ell;  // ascending
  std::vector<double> G;    // ascending
  std::vector<double> sse;  // row-major [iG * ell.size() + iEll]
  double min_sse = 0.0;
  std::size_t min_ell_index = 0;
  std::size_t min_G_index = 0;
  bool flat = false;  // degenerate input (ratio spread below 0.1)

  double at(std::size_t iEll, std::size_t iG) const {
    return sse[iG * ell.size() + iEll];
  }
};

SseLandscape sse_landscape(std::span<const std::pair<double, double>> pts,
                           std::span<const double> ell_grid,
                           std::span<const double> G_grid);

// SSE of the universal-curve model at one (l, G) for the given points.
double universal_curve_sse(std::span<const std::pair<double, double>> pts,
                           double ell, double G);

// Fits y ~ A e^{-gamma t} + c by variable projection: a log-spaced gamma
// grid with the linear (A, c) subproblem solved exactly, golden-section
// refinement in gamma, then one re-fit on the window A e^{-gamma t} > 10 c.
// Needs >= 6 samples with y > 0; an everywhere-flat signal collapses the
// window and is reported as numeric_error.
FitResult fit_exp_offset(std::span<const std::pair<double, double>> samples);

}  // namespace isingbtz
