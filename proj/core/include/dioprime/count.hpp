#pragma once

// Counting 4-tuples (n1,n2,n3,n4) in (Y,2Y]^4 with |n1^c+n2^c-n3^c-n4^c| < γ,
// plus the harmonic sum of 1/|Δ| over the tuples with |Δ| > 1/τ.

#include <cstdint>
#include <span>
#include <vector>

#include "dioprime/ddouble.hpp"

namespace dioprime {

struct CountSpec {
  std::uint64_t Y = 2;
  double c = 1.5;
  double gamma = 1.0;
  double delta = 1e-9;

  /// Throws std::invalid_argument unless Y >= 2, gamma > 0, delta >= 0, c > 0.
  void validate() const;
};

struct CountResult {
  std::uint64_t count = 0;
  /// Tuples with ||Δ| - γ| < δ, whichever side of γ they fell on.
  std::uint64_t ambiguous = 0;

  bool operator==(const CountResult&) const = default;
};

inline constexpr double kNaiveTupleGuard = 1e9;
inline constexpr std::uint64_t kPairSumGuardY = 4096;

/// n1^c + n2^c for all ordered (n1, n2), row-major, in double-double.
std::vector<DoubleDouble> pair_sums(std::uint64_t Y, double c, unsigned workers = 1);

/// Direct O(Y^4) enumeration. Throws std::length_error when Y^4 > 1e9.
CountResult count_tuples_naive(const CountSpec& s);

/// Same predicate over the sorted pair sums with one binary search per pair
/// sum. Throws std::length_error when Y > 4096.
CountResult count_tuples_fast(const CountSpec& s, unsigned workers = 1);

struct ScalingReport {
  double c = 0.0;
  double gamma = 0.0;
  std::vector<std::uint64_t> Ys;
  std::vector<CountResult> counts;
  double slope = 0.0;
  double bound = 0.0;  // max(4 - c, 2)
  double allowance = 0.15;
  bool out_of_regime = false;  // γ ≥ Y^c at the bottom of the ladder
  bool pass = false;
};

/// Least-squares slope of log count against log Y. Needs >= 4 values of Y.
ScalingReport rs_scaling_report(double c, double gamma, std::span<const std::uint64_t> Ys, unsigned workers = 1);

/// Ordinary least-squares slope of y against x.
double fitted_slope(std::span<const double> x, std::span<const double> y);

struct HarmonicV {
  double total = 0.0;
  /// Bucket k covers 2^k/τ < |Δ| ≤ 2^{k+1}/τ.
  std::vector<double> buckets;
  std::vector<std::uint64_t> bucket_counts;

  double ell(std::size_t k, double tau) const;
};

/// Σ 1/|Δ| over ordered tuples with |Δ| > 1/τ, split into dyadic buckets.
/// Guard as for count_tuples_fast.
HarmonicV harmonic_V(const CountSpec& s, double tau, unsigned workers = 1);

/// O(Y^4) reference for harmonic_V, same guard as count_tuples_naive.
double harmonic_V_naive(const CountSpec& s, double tau);

}  // namespace dioprime
