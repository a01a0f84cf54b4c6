// numerics.hpp - small shared numerical utilities: stable log-domain helpers,
// golden-section minimization, trapezoid quadrature with interval doubling,
// and a deterministic parallel map over index ranges.
#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace isingbtz {

// Error raised for malformed configuration; the CLI maps it to exit code 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Error raised for numerical failures (non-convergent quadrature, step-size
// underflow, degenerate fits); the CLI maps it to exit code 3.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ln(2 cosh x) without overflow, valid for any x.
double log2cosh(double x);

// ln(2 sinh x) for x > 0 without overflow.
double log2sinh(double x);

// ln(e^a + e^b)
double logsumexp(double a, double b);

struct MinimizeResult {
  double x = 0.0;
  double fx = 0.0;
  bool boundary = false;  // minimizer pinned to an endpoint (no interior minimum)
  int evaluations = 0;
};

// Golden-section search for a minimum of f on [lo, hi] to absolute tolerance
// xtol in x.  Sets `boundary` when the minimizer lands within 2*xtol of an
// endpoint, which is how a monotone f shows up.
MinimizeResult golden_section_minimize(const std::function<double(double)>& f,
                                       double lo, double hi, double xtol);

// Composite trapezoid rule on [lo, hi] for an m-component complex integrand,
// starting from n0 points and doubling the interval count (reusing previous
// nodes) until every component changes by less than reltol in relative terms.
// Throws numeric_error if the point count would exceed `cap`.
std::vector<std::complex<double>> trapezoid_refine(
    const std::function<void(double, std::span<std::complex<double>>)>& f,
    std::size_t m, double lo, double hi, int n0, int cap, double reltol);

// Scalar real convenience wrapper.
double trapezoid_refine_real(const std::function<double(double)>& f, double lo,
                             double hi, int n0, int cap, double reltol);

// Runs body(i) for i in [0, n) on up to `threads` threads with fixed
// contiguous chunk boundaries.  Each index writes only its own slot in the
// caller's storage, so parallel and serial runs produce identical results.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& body);

// Hardware concurrency with a floor of 1.
int default_threads();

}  // namespace isingbtz
