#include "dioprime/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dioprime/parallel.hpp"

namespace dioprime {

void KernelParams::validate() const {
  if (!(b > 0.0) || !(a > 0.0)) throw std::invalid_argument("kernel: a and b must be positive");
  if (!(b < a / 4.0)) throw std::invalid_argument("kernel: need b < a/4");
  if (r < 1) throw std::invalid_argument("kernel: need r >= 1");
}

KernelParams kernel_from_instance(double eps, double X) {
  if (!(eps > 0.0)) throw std::invalid_argument("kernel_from_instance: eps must be positive");
  if (!(X >= 3.0)) throw std::invalid_argument("kernel_from_instance: X must be >= 3");
  KernelParams p;
  p.a = 0.9 * eps;
  p.b = 0.1 * eps;
  p.r = static_cast<int>(std::floor(std::log(X)));
  return p;
}

namespace {

// CDF of the Irwin–Hall distribution (sum of m uniforms on [0,1]) at t.
long double irwin_hall_cdf(int m, long double t) {
  if (t <= 0) return 0.0L;
  if (t >= m) return 1.0L;
  // Reflect so the alternating sum runs over at most m/2 terms.
  if (t > m / 2.0L) return 1.0L - irwin_hall_cdf(m, m - t);
  long double log_mfact = std::lgamma(static_cast<long double>(m) + 1.0L);
  CompensatedSum<long double> acc;
  long double binom = 1.0L;
  const int kmax = static_cast<int>(std::floor(t));
  for (int k = 0; k <= kmax; ++k) {
    const long double base = t - k;
    if (base > 0) {
      const long double mag = std::exp(m * std::log(base) - log_mfact) * binom;
      acc.add((k % 2 == 0) ? mag : -mag);
    }
    binom = binom * (m - k) / (k + 1);
  }
  return std::clamp(acc.value(), 0.0L, 1.0L);
}

}  // namespace

double phi_eval(const KernelParams& p, double y) {
  const int m = p.order();
  if (m > kMaxPointwiseOrder) {
    throw std::invalid_argument("phi_eval: pointwise evaluation supports order <= " +
                                std::to_string(kMaxPointwiseOrder));
  }
  y = std::abs(y);
  if (y <= p.a - p.b) return 1.0;
  if (y >= p.a + p.b) return 0.0;
  // φ(y) = P(|y - S| <= a) with S the sum of m uniforms on [-h, h]. For
  // y >= 0 and b < a, S >= y - a is the only active constraint.
  const long double h = static_cast<long double>(p.half_width());
  const long double s = static_cast<long double>(y) - static_cast<long double>(p.a);
  const long double t = (s / h + m) / 2.0L;  // S = h (2U - m), U ~ Irwin–Hall(m)
  return static_cast<double>(1.0L - irwin_hall_cdf(m, t));
}

double phi_fourier(const KernelParams& p, double x) {
  if (x == 0.0) return 2.0 * p.a;
  constexpr double pi = std::numbers::pi;
  const double box = std::sin(2.0 * pi * p.a * x) / (pi * x);
  const double u = 2.0 * pi * p.half_width() * x;
  const double sinc = std::sin(u) / u;
  return box * std::pow(sinc, p.order());
}

double phi_fourier_bound(const KernelParams& p, double x) {
  if (x == 0.0) return 2.0 * p.a;
  constexpr double pi = std::numbers::pi;
  const double ax = std::abs(x);
  const double tail = 1.0 / (pi * ax);
  const int m = p.order();
  const double decay = tail * std::pow(m / (2.0 * pi * ax * p.b), m);
  return std::min({2.0 * p.a, tail, decay});
}

}  // namespace dioprime
