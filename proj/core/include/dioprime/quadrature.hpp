#pragma once

// Adaptive Simpson quadrature: each panel compares the trapezoid-derived
// Simpson estimate on [a,b] with the two half-panel estimates and accepts the
// Richardson-extrapolated value once they agree within 15·tol.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "dioprime/parallel.hpp"

namespace dioprime::quad {

template <typename T>
struct Result {
  T value{};
  double error = 0.0;  // sum of |refined - coarse| / 15 over accepted panels
  std::size_t evals = 0;
  bool converged = true;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <typename T, typename F>
void simpson_panel(F& f, double a, double b, const T& fa, const T& fm, const T& fb, const T& whole, double tol,
                   int depth, Result<T>& out) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const T flm = f(lm);
  const T frm = f(rm);
  out.evals += 2;
  const double h = b - a;
  const T left = (h / 12.0) * (fa + 4.0 * flm + fm);
  const T right = (h / 12.0) * (fm + 4.0 * frm + fb);
  const T refined = left + right;
  const double diff = magnitude(refined - whole);
  if (diff <= 15.0 * tol || depth <= 0 || h <= 1e-300) {
    if (depth <= 0 && diff > 15.0 * tol) out.converged = false;
    out.value += refined + (refined - whole) / 15.0;
    out.error += diff / 15.0;
    return;
  }
  simpson_panel(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, out);
  simpson_panel(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, out);
}

}  // namespace detail

/// ∫_a^b f over one panel with absolute tolerance `tol`.
template <typename T, typename F>
void accumulate_panel(F& f, double a, double b, double tol, int max_depth, Result<T>& out) {
  const T fa = f(a);
  const T fb = f(b);
  const T fm = f(0.5 * (a + b));
  out.evals += 3;
  const T whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  detail::simpson_panel(f, a, b, fa, fm, fb, whole, tol, max_depth, out);
}

/// ∫ f over consecutive panels [breaks[i], breaks[i+1]]; the absolute
/// tolerance is shared out in proportion to panel width. Panel results are
/// summed in order, so the result does not depend on threading.
template <typename T, typename F>
Result<T> integrate(F&& f, std::span<const double> breaks, double abs_tol, int max_depth = 30) {
  Result<T> out;
  if (breaks.size() < 2) return out;
  const double total = breaks.back() - breaks.front();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double w = breaks[i + 1] - breaks[i];
    if (w <= 0.0) continue;
    accumulate_panel<T>(f, breaks[i], breaks[i + 1], abs_tol * w / total, max_depth, out);
  }
  return out;
}

/// Same as integrate(), with panels evaluated by `workers` threads. Per-panel
/// results are combined in panel order, so the value is bit-identical for any
/// worker count. `f` must be safe to call concurrently.
template <typename T, typename F>
Result<T> integrate_parallel(F&& f, std::span<const double> breaks, double abs_tol, unsigned workers,
                             int max_depth = 30) {
  Result<T> out;
  if (breaks.size() < 2) return out;
  const double total = breaks.back() - breaks.front();
  const std::size_t n = breaks.size() - 1;
  std::vector<Result<T>> parts(n);
  parallel_for(n, workers, [&](std::size_t i) {
    const double w = breaks[i + 1] - breaks[i];
    if (w > 0.0) accumulate_panel<T>(f, breaks[i], breaks[i + 1], abs_tol * w / total, max_depth, parts[i]);
  });
  for (const auto& p : parts) {
    out.value += p.value;
    out.error += p.error;
    out.evals += p.evals;
    out.converged = out.converged && p.converged;
  }
  return out;
}

template <typename T, typename F>
Result<T> integrate(F&& f, double a, double b, double abs_tol, int max_depth = 30) {
  const double br[2] = {a, b};
  return integrate<T>(f, std::span<const double>(br, 2), abs_tol, max_depth);
}

}  // namespace dioprime::quad
