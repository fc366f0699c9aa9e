#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dioprime/kernel.hpp"

using namespace dioprime;
using boost::math::quadrature::gauss_kronrod;

namespace {

constexpr double kPi = std::numbers::pi;

KernelParams params(double a, double b, int r, bool strict = false) { return {a, b, r, strict}; }

// φ built by repeated numeric convolution of the box with a uniform density.
double phi_convolved(double a, double h, int order, double y) {
  if (order == 0) return std::abs(y) <= a ? 1.0 : 0.0;
  auto inner = [&](double t) { return phi_convolved(a, h, order - 1, y - t); };
  // Split at the points where the inner function has kinks.
  std::vector<double> cuts{-h, h};
  const double span = a + (order - 1) * h;
  for (double s : {-span, span}) {
    for (int j = -order; j <= order; ++j) {
      const double t = y - s + 2.0 * j * h;
      if (t > -h && t < h) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    acc += gauss_kronrod<double, 15>::integrate(inner, cuts[i], cuts[i + 1], 0, 1e-12);
  }
  return acc / (2.0 * h);
}

// Re ∫ φ(y) e(-xy) dy = 2 ∫_0^{a+b} φ(y) cos(2πxy) dy, φ even. Between
// knots φ is a polynomial, so fixed Gauss–Legendre on each piece suffices.
double phi_fourier_quadrature(const KernelParams& p, double x) {
  auto f = [&](double y) { return phi_eval(p, y) * std::cos(2.0 * kPi * x * y); };
  const double h = p.half_width();
  std::vector<double> cuts{0.0};
  for (int j = -p.order(); j <= p.order(); ++j) {
    const double t = p.a + j * h;
    if (t > 0.0) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    acc += boost::math::quadrature::gauss<double, 30>::integrate(f, cuts[i], cuts[i + 1]);
  }
  return 2.0 * acc;
}

}  // namespace

TEST(Kernel, FromInstance) {
  const KernelParams k = kernel_from_instance(1.0, std::exp(10.0));
  EXPECT_DOUBLE_EQ(k.a, 0.9);
  EXPECT_DOUBLE_EQ(k.b, 0.1);
  EXPECT_EQ(k.r, 10);

  const KernelParams small = kernel_from_instance(1e-4, std::exp(10.0));
  EXPECT_NEAR(small.a, 0.9e-4, 1e-18);
  EXPECT_NEAR(small.b, 1e-5, 1e-19);
  EXPECT_EQ(small.r, 10);

  const KernelParams k4 = kernel_from_instance(0.108, 1e4);
  EXPECT_NEAR(k4.a, 0.0972, 1e-15);
  EXPECT_NEAR(k4.b, 0.0108, 1e-15);
  EXPECT_EQ(k4.r, 9);

  EXPECT_THROW(kernel_from_instance(0.0, 100.0), std::invalid_argument);
  EXPECT_THROW(kernel_from_instance(0.1, 2.0), std::invalid_argument);
}

TEST(Kernel, Validate) {
  EXPECT_NO_THROW(params(0.9, 0.1, 4).validate());
  EXPECT_THROW(params(0.4, 0.1, 4).validate(), std::invalid_argument);
  EXPECT_THROW(params(0.9, 0.1, 0).validate(), std::invalid_argument);
  EXPECT_THROW(params(0.9, -0.1, 2).validate(), std::invalid_argument);
}

TEST(Kernel, PointValues) {
  for (int r : {1, 2, 4, 9, 20}) {
    const KernelParams p = params(0.9, 0.1, r);
    EXPECT_DOUBLE_EQ(phi_eval(p, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(phi_eval(p, 0.8), 1.0);
    EXPECT_DOUBLE_EQ(phi_eval(p, 1.0), 0.0);
    EXPECT_NEAR(phi_eval(p, 0.9), 0.5, 1e-13) << r;
    EXPECT_DOUBLE_EQ(phi_eval(p, 5.0), 0.0);
  }
}

TEST(Kernel, EvenBoundedMonotone) {
  for (int r : {1, 3, 8}) {
    const KernelParams p = params(0.9, 0.1, r);
    double prev = 1.0;
    for (int i = 0; i <= 2000; ++i) {
      const double y = 1.2 * i / 2000.0;
      const double v = phi_eval(p, y);
      EXPECT_EQ(v, phi_eval(p, -y));
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      EXPECT_LE(v, prev + 1e-15) << "r=" << r << " y=" << y;
      if (std::abs(y - p.a) < p.b / 2) {
        EXPECT_GT(v, 0.0);
        EXPECT_LT(v, 1.0);
      }
      prev = v;
    }
  }
}

TEST(Kernel, MatchesNumericConvolution) {
  for (int r : {1, 2, 3}) {
    const KernelParams p = params(0.9, 0.1, r);
    for (double y : {0.79, 0.83, 0.87, 0.9, 0.91, 0.95, 0.99}) {
      EXPECT_NEAR(phi_eval(p, y), phi_convolved(p.a, p.half_width(), p.order(), y), 1e-9) << r << ' ' << y;
    }
  }
}

TEST(Kernel, FourierAtZero) {
  const KernelParams p = params(0.9, 0.1, 4);
  EXPECT_DOUBLE_EQ(phi_fourier(p, 0.0), 1.8);
  EXPECT_DOUBLE_EQ(phi_fourier_bound(p, 0.0), 1.8);
}

TEST(Kernel, FourierMatchesQuadrature) {
  const KernelParams p = params(0.9, 0.1, 4);
  EXPECT_NEAR(phi_fourier(p, 1.3), phi_fourier_quadrature(p, 1.3), 1e-8);
  for (double x : {0.01, 0.37, 2.2, 7.9}) EXPECT_NEAR(phi_fourier(p, x), phi_fourier_quadrature(p, x), 1e-8) << x;
}

TEST(Kernel, FourierZerosAtHalfIntegersOverA) {
  const KernelParams p = params(0.9, 0.1, 4);
  for (int n : {1, 2, 5, -3, 17}) EXPECT_NEAR(phi_fourier(p, n / (2.0 * p.a)), 0.0, 1e-14) << n;
}

TEST(Kernel, BoundExample) {
  const KernelParams p = params(0.9, 0.1, 4);
  const double x = 10.0;
  const double expect = std::min({1.8, 1.0 / (x * kPi), 1.0 / (x * kPi) * std::pow(4.0 / (2.0 * kPi * x * 0.1), 4)});
  EXPECT_DOUBLE_EQ(phi_fourier_bound(p, x), expect);
}

TEST(Kernel, BoundDecaysPastCorner) {
  const KernelParams p = params(0.9, 0.1, 6);
  double prev = INFINITY;
  for (double x = 6.0 / (2.0 * kPi * 0.1) + 0.1; x < 1e4; x *= 1.3) {
    const double v = phi_fourier_bound(p, x);
    EXPECT_LT(v, prev);
    EXPECT_LT(v * std::pow(x, 6.0), INFINITY);
    prev = v;
  }
  // Order 6 beyond the corner: the bound falls like |x|^{-7}.
  EXPECT_NEAR(phi_fourier_bound(p, 1e4) / phi_fourier_bound(p, 1e3), 1e-7, 1e-12);
}

TEST(Kernel, BoundHoldsOnRandomPoints) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xs(-1e3, 1e3);
  for (int r = 1; r <= 8; ++r) {
    for (bool strict : {false, true}) {
      const KernelParams p = params(0.9, 0.1, r, strict);
      for (int i = 0; i < 20000; ++i) {
        const double x = xs(rng);
        ASSERT_LE(std::abs(phi_fourier(p, x)), phi_fourier_bound(p, x) + 1e-12) << r << ' ' << x;
      }
    }
  }
}

TEST(Kernel, StrictModeRaisesOrder) {
  const KernelParams p = params(0.9, 0.1, 3, true);
  EXPECT_EQ(p.order(), 4);
  EXPECT_DOUBLE_EQ(p.half_width(), 0.025);
  const double x = 40.0;
  EXPECT_DOUBLE_EQ(phi_fourier_bound(p, x),
                   std::min({1.8, 1.0 / (kPi * x), 1.0 / (kPi * x) * std::pow(4.0 / (2.0 * kPi * x * 0.1), 4)}));
  EXPECT_NEAR(phi_fourier(p, 2.7), phi_fourier_quadrature(p, 2.7), 1e-8);
}

TEST(Kernel, PointwiseOrderLimit) {
  EXPECT_THROW(phi_eval(params(0.9, 0.1, kMaxPointwiseOrder + 1), 0.85), std::invalid_argument);
  EXPECT_NO_THROW(phi_fourier(params(0.9, 0.1, kMaxPointwiseOrder + 1), 0.85));
}
