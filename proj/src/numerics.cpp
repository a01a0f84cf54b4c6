#include "isingbtz/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

namespace isingbtz {

double log2cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a));
}

double log2sinh(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("log2sinh requires x > 0");
  return x + std::log1p(-std::exp(-2.0 * x));
}

double logsumexp(double a, double b) {
  const double m = std::max(a, b);
  if (!std::isfinite(m)) return m;  // both -inf, or an inf dominates
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

MinimizeResult golden_section_minimize(const std::function<double(double)>& f,
                                       double lo, double hi, double xtol) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section: need lo < hi");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;   // 1/phi
  const double invphi2 = (3.0 - std::sqrt(5.0)) / 2.0;  // 1/phi^2

  double a = lo, b = hi;
  double h = b - a;
  double c = a + invphi2 * h;
  double d = a + invphi * h;
  double fc = f(c);
  double fd = f(d);
  int evals = 2;

  while (h > xtol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      h = b - a;
      c = a + invphi2 * h;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      h = b - a;
      d = a + invphi * h;
      fd = f(d);
    }
    ++evals;
  }

  MinimizeResult r;
  r.x = (fc < fd) ? c : d;
  r.fx = std::min(fc, fd);
  r.evaluations = evals;
  r.boundary = (r.x - lo < 2.0 * xtol) || (hi - r.x < 2.0 * xtol);
  return r;
}

std::vector<std::complex<double>> trapezoid_refine(
    const std::function<void(double, std::span<std::complex<double>>)>& f,
    std::size_t m, double lo, double hi, int n0, int cap, double reltol) {
  using cd = std::complex<double>;
  if (!(hi > lo)) return std::vector<cd>(m, cd(0.0, 0.0));
  if (n0 < 2) throw std::invalid_argument("trapezoid_refine: n0 < 2");

  std::vector<cd> buf(m);
  std::vector<cd> sum(m, cd(0.0, 0.0));

  // initial grid with n0 points (n0 - 1 intervals)
  long nint = n0 - 1;
  double h = (hi - lo) / static_cast<double>(nint);
  f(lo, buf);
  for (std::size_t q = 0; q < m; ++q) sum[q] = 0.5 * buf[q];
  f(hi, buf);
  for (std::size_t q = 0; q < m; ++q) sum[q] += 0.5 * buf[q];
  for (long i = 1; i < nint; ++i) {
    f(lo + h * static_cast<double>(i), buf);
    for (std::size_t q = 0; q < m; ++q) sum[q] += buf[q];
  }
  std::vector<cd> integral(m);
  for (std::size_t q = 0; q < m; ++q) integral[q] = h * sum[q];

  while (true) {
    if (2 * nint + 1 > cap) {
      throw numeric_error(
          "trapezoid_refine: no convergence within point cap " +
          std::to_string(cap));
    }
    // midpoints of the current intervals
    const double h2 = 0.5 * h;
    std::vector<cd> mid(m, cd(0.0, 0.0));
    for (long i = 0; i < nint; ++i) {
      f(lo + h * static_cast<double>(i) + h2, buf);
      for (std::size_t q = 0; q < m; ++q) mid[q] += buf[q];
    }
    std::vector<cd> refined(m);
    bool done = true;
    for (std::size_t q = 0; q < m; ++q) {
      refined[q] = 0.5 * integral[q] + h2 * mid[q];
      const double scale = std::max(std::abs(refined[q]), 1e-300);
      if (std::abs(refined[q] - integral[q]) > reltol * scale) done = false;
    }
    integral = std::move(refined);
    nint *= 2;
    h = h2;
    if (done) return integral;
  }
}

double trapezoid_refine_real(const std::function<double(double)>& f, double lo,
                             double hi, int n0, int cap, double reltol) {
  auto wrap = [&](double x, std::span<std::complex<double>> out) {
    out[0] = std::complex<double>(f(x), 0.0);
  };
  return trapezoid_refine(wrap, 1, lo, hi, n0, cap, reltol)[0].real();
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  int nt = threads > 0 ? threads : default_threads();
  nt = static_cast<int>(std::min<std::size_t>(nt, n));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const std::size_t chunk = (n + nt - 1) / nt;
  std::exception_ptr first_error;
  std::mutex err_mutex;
  for (int w = 0; w < nt; ++w) {
    const std::size_t b = static_cast<std::size_t>(w) * chunk;
    const std::size_t e = std::min(n, b + chunk);
    pool.emplace_back([&, b, e]() {
      try {
        for (std::size_t i = b; i < e; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

int default_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace isingbtz
