#include "dioprime/count.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dioprime/parallel.hpp"

namespace dioprime {

namespace {

// The three thresholds shared by both counters. A tuple is counted when
// |Δ| < γ and flagged when γ - δ < |Δ| < γ + δ.
struct Window {
  DoubleDouble gamma;
  DoubleDouble upper;
  DoubleDouble lower;

  explicit Window(const CountSpec& s) : gamma(s.gamma), upper(s.gamma + s.delta), lower(s.gamma - s.delta) {}
};

std::vector<DoubleDouble> powers(std::uint64_t Y, double c) {
  std::vector<DoubleDouble> v(Y);
  for (std::uint64_t i = 0; i < Y; ++i) v[i] = pow_dd(Y + 1 + i, c);
  return v;
}

// Number of j with |p[j] - x| below `thr` (strictly, or ≤ when !strict),
// for p sorted ascending.
std::uint64_t within(std::span<const DoubleDouble> p, const DoubleDouble& x, const DoubleDouble& thr, bool strict) {
  auto inside = [&](const DoubleDouble& v) {
    const DoubleDouble d = abs(v - x);
    return strict ? d < thr : d <= thr;
  };
  // Left edge: first j that is inside or above x. Right edge: first j above x
  // that is outside.
  const auto left = std::partition_point(p.begin(), p.end(),
                                         [&](const DoubleDouble& v) { return v < x && !inside(v); });
  const auto right =
      std::partition_point(left, p.end(), [&](const DoubleDouble& v) { return !(v > x) || inside(v); });
  return static_cast<std::uint64_t>(right - left);
}

}  // namespace

void CountSpec::validate() const {
  if (Y < 2) throw std::invalid_argument("CountSpec: Y must be >= 2");
  if (!(gamma > 0.0)) throw std::invalid_argument("CountSpec: gamma must be positive");
  if (!(delta >= 0.0)) throw std::invalid_argument("CountSpec: delta must be non-negative");
  if (!(c > 0.0)) throw std::invalid_argument("CountSpec: c must be positive");
}

std::vector<DoubleDouble> pair_sums(std::uint64_t Y, double c, unsigned workers) {
  const auto v = powers(Y, c);
  std::vector<DoubleDouble> out(Y * Y);
  parallel_for(Y, workers, [&](std::size_t i) {
    for (std::uint64_t j = 0; j < Y; ++j) out[i * Y + j] = v[i] + v[j];
  });
  return out;
}

CountResult count_tuples_naive(const CountSpec& s) {
  s.validate();
  const double y = static_cast<double>(s.Y);
  if (y * y * y * y > kNaiveTupleGuard) throw std::length_error("count_tuples_naive: Y^4 exceeds 1e9");
  const Window w(s);
  const auto v = powers(s.Y, s.c);
  CountResult r;
  for (std::uint64_t a = 0; a < s.Y; ++a) {
    for (std::uint64_t b = 0; b < s.Y; ++b) {
      const DoubleDouble left = v[a] + v[b];
      for (std::uint64_t c3 = 0; c3 < s.Y; ++c3) {
        for (std::uint64_t d = 0; d < s.Y; ++d) {
          const DoubleDouble delta = abs(left - (v[c3] + v[d]));
          if (delta < w.gamma) ++r.count;
          if (delta < w.upper && !(delta <= w.lower)) ++r.ambiguous;
        }
      }
    }
  }
  return r;
}

CountResult count_tuples_fast(const CountSpec& s, unsigned workers) {
  s.validate();
  if (s.Y > kPairSumGuardY) throw std::length_error("count_tuples_fast: Y exceeds 4096");
  const Window w(s);
  auto p = pair_sums(s.Y, s.c, workers);
  std::sort(p.begin(), p.end());
  const std::span<const DoubleDouble> sorted(p);

  const std::size_t n = p.size();
  const std::size_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<CountResult> parts(nblocks);
  parallel_for(nblocks, workers, [&](std::size_t blk) {
    CountResult acc;
    const std::size_t hi = std::min(n, (blk + 1) * kReductionBlock);
    for (std::size_t i = blk * kReductionBlock; i < hi; ++i) {
      acc.count += within(sorted, p[i], w.gamma, true);
      acc.ambiguous += within(sorted, p[i], w.upper, true) - within(sorted, p[i], w.lower, false);
    }
    parts[blk] = acc;
  });
  CountResult r;
  for (const auto& part : parts) {
    r.count += part.count;
    r.ambiguous += part.ambiguous;
  }
  return r;
}

double fitted_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fitted_slope: need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("fitted_slope: x values all equal");
  return sxy / sxx;
}

ScalingReport rs_scaling_report(double c, double gamma, std::span<const std::uint64_t> Ys, unsigned workers) {
  if (Ys.size() < 4) throw std::invalid_argument("rs_scaling_report: need at least 4 values of Y");
  ScalingReport rep;
  rep.c = c;
  rep.gamma = gamma;
  rep.Ys.assign(Ys.begin(), Ys.end());
  rep.bound = std::max(4.0 - c, 2.0);
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::uint64_t Y : Ys) {
    CountSpec s{Y, c, gamma};
    rep.counts.push_back(count_tuples_fast(s, workers));
    lx.push_back(std::log(static_cast<double>(Y)));
    ly.push_back(std::log(static_cast<double>(rep.counts.back().count)));
  }
  rep.slope = fitted_slope(lx, ly);
  rep.out_of_regime = gamma >= std::pow(static_cast<double>(*std::min_element(Ys.begin(), Ys.end())), c);
  rep.pass = rep.slope <= rep.bound + rep.allowance;
  return rep;
}

double HarmonicV::ell(std::size_t k, double tau) const { return std::ldexp(1.0, static_cast<int>(k)) / tau; }

namespace {

// Dyadic bucket of r = |Δ|τ > 1: the k with 2^k < r ≤ 2^{k+1}.
std::size_t bucket_of(double r) {
  int e = 0;
  const double m = std::frexp(r, &e);  // r = m 2^e, m in [1/2, 1)
  return static_cast<std::size_t>(m == 0.5 ? e - 2 : e - 1);
}

}  // namespace

HarmonicV harmonic_V(const CountSpec& s, double tau, unsigned workers) {
  s.validate();
  if (!(tau > 0.0)) throw std::invalid_argument("harmonic_V: tau must be positive");
  if (s.Y > kPairSumGuardY) throw std::length_error("harmonic_V: Y exceeds 4096");
  auto p = pair_sums(s.Y, s.c, workers);
  std::sort(p.begin(), p.end());
  const DoubleDouble cut(1.0 / tau);
  const std::size_t n = p.size();
  constexpr std::size_t kMaxBuckets = 128;

  struct Part {
    std::vector<CompensatedSum<double>> sums = std::vector<CompensatedSum<double>>(kMaxBuckets);
    std::vector<std::uint64_t> counts = std::vector<std::uint64_t>(kMaxBuckets, 0);
  };
  const std::size_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<Part> parts(nblocks);
  parallel_for(nblocks, workers, [&](std::size_t blk) {
    Part& part = parts[blk];
    const std::size_t hi = std::min(n, (blk + 1) * kReductionBlock);
    for (std::size_t i = blk * kReductionBlock; i < hi; ++i) {
      // Pairs (i, j) with p[j] - p[i] > 1/τ; the mirrored pair is the same
      // term, so each counts twice.
      const DoubleDouble thr = p[i] + cut;
      auto first = std::upper_bound(p.begin() + static_cast<std::ptrdiff_t>(i), p.end(), thr,
                                    [&](const DoubleDouble& t, const DoubleDouble& v) { return t < v; });
      // The dd comparison above can differ from computing p[j] - p[i] by an
      // ulp, so settle the edge with the difference itself.
      while (first != p.begin() + static_cast<std::ptrdiff_t>(i + 1) && (*(first - 1) - p[i]) > cut) --first;
      while (first != p.end() && !((*first - p[i]) > cut)) ++first;
      for (auto it = first; it != p.end(); ++it) {
        const double d = (*it - p[i]).to_double();
        const std::size_t k = bucket_of(d * tau);
        part.sums[k].add(2.0 / d);
        part.counts[k] += 2;
      }
    }
  });

  HarmonicV out;
  std::vector<std::vector<double>> per_bucket(kMaxBuckets);
  std::vector<std::uint64_t> counts(kMaxBuckets, 0);
  for (const auto& part : parts) {
    for (std::size_t k = 0; k < kMaxBuckets; ++k) {
      per_bucket[k].push_back(part.sums[k].value());
      counts[k] += part.counts[k];
    }
  }
  std::size_t used = 0;
  for (std::size_t k = 0; k < kMaxBuckets; ++k) {
    if (counts[k] > 0) used = k + 1;
  }
  out.buckets.resize(used);
  out.bucket_counts.assign(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(used));
  std::vector<double> totals(used);
  for (std::size_t k = 0; k < used; ++k) {
    out.buckets[k] = tree_sum(std::move(per_bucket[k]));
    totals[k] = out.buckets[k];
  }
  out.total = tree_sum(std::move(totals));
  return out;
}

double harmonic_V_naive(const CountSpec& s, double tau) {
  s.validate();
  const double y = static_cast<double>(s.Y);
  if (y * y * y * y > kNaiveTupleGuard) throw std::length_error("harmonic_V_naive: Y^4 exceeds 1e9");
  const auto v = powers(s.Y, s.c);
  const DoubleDouble cut(1.0 / tau);
  CompensatedSum<double> acc;
  for (std::uint64_t a = 0; a < s.Y; ++a) {
    for (std::uint64_t b = 0; b < s.Y; ++b) {
      const DoubleDouble left = v[a] + v[b];
      for (std::uint64_t c3 = 0; c3 < s.Y; ++c3) {
        for (std::uint64_t d = 0; d < s.Y; ++d) {
          const DoubleDouble delta = abs(left - (v[c3] + v[d]));
          if (delta > cut) acc.add(1.0 / delta.to_double());
        }
      }
    }
  }
  return acc.value();
}

}  // namespace dioprime
