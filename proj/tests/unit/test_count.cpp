#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "dioprime/count.hpp"

using namespace dioprime;

namespace {

CountSpec spec(std::uint64_t Y, double c, double gamma) {
  CountSpec s;
  s.Y = Y;
  s.c = c;
  s.gamma = gamma;
  return s;
}

// Long-double enumeration, independent of the library's double-double path.
std::uint64_t count_oracle(std::uint64_t Y, double c, double gamma) {
  std::vector<long double> p;
  for (std::uint64_t n = Y + 1; n <= 2 * Y; ++n) p.push_back(powl(static_cast<long double>(n), c));
  std::uint64_t hits = 0;
  for (auto a : p)
    for (auto b : p)
      for (auto x : p)
        for (auto y : p) hits += fabsl(a + b - x - y) < gamma;
  return hits;
}

}  // namespace

TEST(Count, SmallExamples) {
  EXPECT_EQ(count_tuples_naive(spec(2, 1.5, 0.1)).count, 6u);
  EXPECT_EQ(count_tuples_fast(spec(2, 1.5, 0.1)).count, 6u);
  EXPECT_EQ(count_tuples_naive(spec(10, 1.5, 2.0 * std::pow(20.0, 1.5) + 1.0)).count, 10000u);
  EXPECT_EQ(count_tuples_fast(spec(10, 1.5, 2.0 * std::pow(20.0, 1.5) + 1.0)).count, 10000u);
  // c = 1: tuples over {3,4} with n1 + n2 = n3 + n4.
  EXPECT_EQ(count_tuples_naive(spec(2, 1.0, 0.5)).count, 6u);
  EXPECT_EQ(count_tuples_fast(spec(2, 1.0, 0.5)).count, 6u);
}

TEST(Count, Validation) {
  EXPECT_THROW(count_tuples_naive(spec(1, 1.5, 1.0)), std::invalid_argument);
  EXPECT_THROW(count_tuples_naive(spec(4, 1.5, 0.0)), std::invalid_argument);
  EXPECT_THROW(count_tuples_naive(spec(200, 1.5, 1.0)), std::length_error);
  EXPECT_THROW(count_tuples_fast(spec(kPairSumGuardY + 1, 1.5, 1.0)), std::length_error);
}

TEST(Count, NaiveMatchesLongDoubleOracle) {
  for (std::uint64_t Y : {5u, 9u, 16u}) {
    for (double c : {1.3, 1.5, 2.7}) {
      for (double g : {0.01, 1.0}) {
        const CountResult r = count_tuples_naive(spec(Y, c, g));
        EXPECT_EQ(r.ambiguous, 0u);
        EXPECT_EQ(r.count, count_oracle(Y, c, g)) << Y << ' ' << c << ' ' << g;
      }
    }
  }
}

TEST(Count, FastEqualsNaiveOnRandomInstances) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> cs(1.0, 3.0);
  const std::uint64_t Ys[] = {8, 16, 32};
  const double gammas[] = {0.01, 1.0};
  for (int i = 0; i < 60; ++i) {
    double c = cs(rng);
    if (c == 1.0 || c == 2.0) c = 1.5;
    const CountSpec s = spec(Ys[i % 3], c, gammas[(i / 3) % 2]);
    ASSERT_EQ(count_tuples_fast(s, 1 + i % 8), count_tuples_naive(s)) << s.Y << ' ' << c << ' ' << s.gamma;
  }
}

TEST(Count, MonotoneInGamma) {
  std::uint64_t prev = 0;
  for (double g : {0.001, 0.01, 0.1, 1.0, 10.0, 100.0}) {
    const std::uint64_t n = count_tuples_fast(spec(24, 1.7, g)).count;
    EXPECT_GE(n, prev);
    prev = n;
  }
  // Diagonal tuples (n1,n2) = (n3,n4) or (n4,n3) always count: 2Y^2 − Y.
  EXPECT_GE(count_tuples_fast(spec(24, 1.7, 1e-6)).count, 2u * 24 * 24 - 24);
}

TEST(Count, PairSumsAreSymmetric) {
  const auto sums = pair_sums(12, 1.5);
  ASSERT_EQ(sums.size(), 144u);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      EXPECT_EQ(sums[i * 12 + j].hi, sums[j * 12 + i].hi);
      EXPECT_NEAR(sums[i * 12 + j].to_double(), std::pow(13.0 + i, 1.5) + std::pow(13.0 + j, 1.5), 1e-9);
    }
}

TEST(Count, AmbiguityBand) {
  // γ placed exactly on a realised |Δ| must be reported as ambiguous.
  CountSpec s = spec(2, 1.0, 1.0);
  s.delta = 1e-6;
  const CountResult r = count_tuples_naive(s);
  EXPECT_GT(r.ambiguous, 0u);
  EXPECT_EQ(count_tuples_fast(s), r);
}

TEST(Scaling, RobertSargosLadder) {
  const std::vector<std::uint64_t> Ys{64, 128, 256, 512, 1024};
  const ScalingReport rep = rs_scaling_report(1.5, 1.0, Ys, 8);
  EXPECT_LE(rep.slope, 2.65);
  EXPECT_TRUE(rep.pass);
  EXPECT_FALSE(rep.out_of_regime);
  EXPECT_DOUBLE_EQ(rep.bound, 2.5);
}

TEST(Scaling, DiagonalRegime) {
  const std::vector<std::uint64_t> Ys{32, 64, 128, 256};
  const ScalingReport rep = rs_scaling_report(2.5, 1.0, Ys, 8);
  EXPECT_LE(rep.slope, 2.15);
}

TEST(Scaling, HugeGammaFlagsOutOfRegime) {
  const std::vector<std::uint64_t> Ys{4, 8, 16, 32};
  const ScalingReport rep = rs_scaling_report(1.5, 1e9, Ys);
  EXPECT_TRUE(rep.out_of_regime);
  EXPECT_NEAR(rep.slope, 4.0, 1e-12);
  EXPECT_THROW(rs_scaling_report(1.5, 1.0, std::vector<std::uint64_t>{4, 8, 16}), std::invalid_argument);
}

TEST(Scaling, FittedSlope) {
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  EXPECT_DOUBLE_EQ(fitted_slope(x, y), 2.0);
}

TEST(Harmonic, MatchesNaiveAndOracle) {
  const CountSpec s = spec(8, 1.5, 1.0);
  const double tau = 1.0;
  const HarmonicV v = harmonic_V(s, tau, 4);
  EXPECT_NEAR(v.total, harmonic_V_naive(s, tau), 1e-9 * v.total);

  std::vector<long double> p;
  for (int n = 9; n <= 16; ++n) p.push_back(powl(n, 1.5L));
  long double ref = 0;
  for (auto a : p)
    for (auto b : p)
      for (auto x : p)
        for (auto y : p) {
          const long double d = fabsl(a + b - x - y);
          if (d > 1.0L / tau) ref += 1.0L / d;
        }
  EXPECT_NEAR(v.total, static_cast<double>(ref), 1e-9 * v.total);
}

TEST(Harmonic, BucketsBoundedByCounts) {
  const double tau = 0.01;
  const HarmonicV v = harmonic_V(spec(12, 1.5, 1.0), tau);
  ASSERT_EQ(v.buckets.size(), v.bucket_counts.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < v.buckets.size(); ++k) {
    EXPECT_LE(v.buckets[k], v.bucket_counts[k] / v.ell(k, tau) * (1 + 1e-12));
    sum += v.buckets[k];
  }
  EXPECT_NEAR(sum, v.total, 1e-9 * v.total);
}

// Each dyadic piece grows like Y^{4-c}; the total carries an extra log Y
// from summing about log Y pieces, so the fit is on the largest piece.
TEST(Harmonic, LadderSlope) {
  std::vector<double> lx, lmax, ltotal;
  for (std::uint64_t Y : {16u, 32u, 64u, 128u, 256u}) {
    const HarmonicV v = harmonic_V(spec(Y, 1.5, 1.0), 1.0, 8);
    lx.push_back(std::log(static_cast<double>(Y)));
    lmax.push_back(std::log(*std::max_element(v.buckets.begin(), v.buckets.end())));
    ltotal.push_back(std::log(v.total));
  }
  EXPECT_LE(fitted_slope(lx, lmax), 4.0 - 1.5 + 0.15);
  EXPECT_GT(fitted_slope(lx, ltotal), fitted_slope(lx, lmax));
}

TEST(Harmonic, DeterministicAcrossWorkers) {
  const HarmonicV a = harmonic_V(spec(40, 1.5, 1.0), 0.5, 1);
  const HarmonicV b = harmonic_V(spec(40, 1.5, 1.0), 0.5, 8);
  EXPECT_EQ(a.total, b.total);
  EXPECT_EQ(a.buckets, b.buckets);
}
