#pragma once

// Direct solvers for |p1^c + ... + pk^c - R| < ε with primes in (X, 2X]:
// ternary counts B(R) and B1(R), the main term H(R), a meet-in-the-middle
// search for six primes, and seeded scans over R.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dioprime/ddouble.hpp"
#include "dioprime/instance.hpp"
#include "dioprime/kernel.hpp"
#include "dioprime/primes.hpp"

namespace dioprime {

struct SolverOptions {
  /// <= 0 selects 1/log N.
  double eps = 0.0;
  double eta = 0.05;
  double k_exponent = 10.0;
  bool allow_degenerate = false;
};

/// X = (N/3)^{1/c}, k = 3. Throws std::invalid_argument when (X, 2X] holds
/// no prime.
ProblemInstance instance_for_theorem1(double N, double c, const SolverOptions& opts = {});
/// X = (N/5)^{1/c} / 2, k = 6.
ProblemInstance instance_for_theorem2(double N, double c, const SolverOptions& opts = {});

/// Whether k X^c < R < k (2X)^c, i.e. whether R is reachable at all.
struct Feasibility {
  double lower = 0.0;
  double upper = 0.0;
  bool feasible = false;
};
Feasibility feasibility(const ProblemInstance& inst, double R);

struct SolutionRecord {
  std::vector<std::uint64_t> primes;
  double value = 0.0;
  double deviation = 0.0;
  /// Set when a 256-bit recomputation disagrees about |value - R| < ε.
  bool ambiguous = false;
};

struct TripleCount {
  double weighted = 0.0;
  std::uint64_t unweighted = 0;
  std::vector<SolutionRecord> records;
};

inline constexpr double kPairGuard = 1e8;
inline constexpr double kTripleTableGuard = 1e8;

/// Ordered pair sums p_i^c + p_j^c in sorted order, shared by every R.
class TripleSolver {
 public:
  TripleSolver(const ProblemInstance& inst, PrimeTable primes);

  const ProblemInstance& instance() const { return inst_; }
  const PrimeTable& primes() const { return primes_; }

  /// Ordered triples with |Σ p^c - R| < ε. Records are kept when asked.
  TripleCount count_B(double R, bool keep_records = false) const;

  /// Σ (log p1)(log p2)(log p3) φ(Σ p^c - R) over triples within a + b of R.
  double weighted_B1(double R, const KernelParams& kernel) const;

 private:
  struct PairSum {
    DoubleDouble value;
    std::uint32_t i;
    std::uint32_t j;
  };

  // Calls visit(pair, k, deviation) for every pair/third prime with
  // |deviation| < radius, deviation = pair + p_k^c - R in double-double.
  template <typename Visit>
  void for_each_near(double R, double radius, std::size_t k, Visit&& visit) const;

  ProblemInstance inst_;
  PrimeTable primes_;
  std::vector<DoubleDouble> powers_;
  std::vector<PairSum> pairs_;
};

/// One-shot form; sieves the primes itself.
TripleCount count_B(const ProblemInstance& inst, double R, bool keep_records = false);

struct MainTerm {
  double value = 0.0;
  double error = 0.0;       // Richardson estimate of the quadrature error
  double tail_bound = 0.0;  // analytic bound on the discarded tail
  double tau_prime = 0.0;
  std::size_t grid_points = 0;
  bool converged = false;
};

/// H(R) = ∫ I(x)^k Φ(x) e(-Rx) dx, as 2 Re ∫_0^{τ'} over a cached grid of
/// I values shared by every R up to `R_max`. The grid step is 1/(64 f) with
/// f = k(2X)^c + R_max, and τ' doubles until the tail bound from
/// |I(x)| ≤ 1/(|x|X^{c-1}) and |Φ(x)| ≤ min(2a, 1/(π|x|)) drops below 1e-3|H|.
class MainTermIntegrator {
 public:
  MainTermIntegrator(const ProblemInstance& inst, const KernelParams& kernel, int k, double R_max,
                     unsigned workers = 1);

  MainTerm operator()(double R);

 private:
  void extend_to(std::size_t points);
  std::complex<double> simpson(double R, std::size_t points, std::size_t stride) const;
  double tail(double tau_prime) const;

  ProblemInstance inst_;
  KernelParams kernel_;
  int k_;
  double step_;
  unsigned workers_;
  std::vector<std::complex<double>> weight_;  // I(x)^k Φ(x) on the fine grid
};

MainTerm main_term_H(const ProblemInstance& inst, double R, int k, const KernelParams& kernel,
                     unsigned workers = 1);

struct SextupleResult {
  std::optional<SolutionRecord> record;
  Feasibility feasibility;
  std::size_t table_size = 0;
  /// Smallest |Σ p^c - N| over all sextuples seen, hit or not.
  double best_deviation = 0.0;
};

/// Meet in the middle over sorted triple sums of primes p ≤ q ≤ r. The first
/// triple in table order (by value, then prime indices) that pairs with a
/// partner within ε wins; hits that fail the 256-bit recheck are skipped in
/// favour of a clean one when one exists.
SextupleResult find_sextuple(const ProblemInstance& inst, double N, unsigned workers = 1);

struct ScanReport {
  std::uint64_t seed = 0;
  double N = 0.0;
  std::vector<double> Rs;
  std::vector<std::uint64_t> counts;
  double zero_fraction = 0.0;
  std::map<std::uint64_t, std::uint64_t> histogram;
  double mean_count = 0.0;
  double median_count = 0.0;

  /// Filled only with a main-term comparison.
  std::vector<double> B1;
  std::vector<double> H;
  double median_ratio = 0.0;
};

/// R_i = 2N - N·u_i with u_i uniform on [0, 1) from mt19937_64(seed), 53-bit.
std::vector<double> sample_R(double N, std::size_t samples, std::uint64_t seed);

/// Unweighted count_B at each sampled R. With `kernel`, also B1 and H and
/// the median of B1/H.
ScanReport exceptional_scan(const TripleSolver& solver, double N, std::size_t samples, std::uint64_t seed,
                            const KernelParams* kernel = nullptr, unsigned workers = 1);

double median(std::vector<double> v);

}  // namespace dioprime
