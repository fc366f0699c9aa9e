#pragma once

// Small fixed-partition worker helpers. Work is always split into the same
// blocks regardless of worker count, and reductions combine block results in
// a fixed pairwise tree, so floating-point results are bit-identical for any
// number of workers.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dioprime {

/// Neumaier-compensated accumulator.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

/// Runs body(i) for i in [0, n). Indices are dealt out dynamically, so body
/// must only write to per-index state.
template <typename Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const unsigned nthreads = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run = [&] {
    try {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads - 1);
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

/// Pairwise (fixed-tree) combination of partial sums.
template <typename T>
T tree_sum(std::vector<T> parts) {
  if (parts.empty()) return T{};
  while (parts.size() > 1) {
    std::vector<T> next((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next[i / 2] = parts[i] + parts[i + 1];
    if (parts.size() % 2 == 1) next.back() = parts.back();
    parts = std::move(next);
  }
  return parts.front();
}

inline constexpr std::size_t kReductionBlock = 4096;

/// Σ term(i) for i in [0, n): compensated within fixed blocks of
/// kReductionBlock indices, blocks combined by tree_sum.
template <typename T, typename Term>
T deterministic_sum(std::size_t n, unsigned workers, Term&& term) {
  const std::size_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<T> partial(nblocks);
  parallel_for(nblocks, workers, [&](std::size_t b) {
    CompensatedSum<T> acc;
    const std::size_t lo = b * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
    partial[b] = acc.value();
  });
  return tree_sum(std::move(partial));
}

/// Complex variant: real and imaginary parts compensated separately.
template <typename Term>
std::complex<double> deterministic_sum_complex(std::size_t n, unsigned workers, Term&& term) {
  const std::size_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<std::complex<double>> partial(nblocks);
  parallel_for(nblocks, workers, [&](std::size_t b) {
    CompensatedSum<double> re;
    CompensatedSum<double> im;
    const std::size_t lo = b * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      const std::complex<double> z = term(i);
      re.add(z.real());
      im.add(z.imag());
    }
    partial[b] = {re.value(), im.value()};
  });
  return tree_sum(std::move(partial));
}

}  // namespace dioprime
