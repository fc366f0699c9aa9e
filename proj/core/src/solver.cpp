#include "dioprime/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <tuple>

#include "dioprime/highprec.hpp"
#include "dioprime/parallel.hpp"
#include "dioprime/sums.hpp"

namespace dioprime {

namespace {

ProblemInstance instance_for(double N, double c, double X, int k, const SolverOptions& opts) {
  if (!(N > 1.0)) throw std::invalid_argument("N must exceed 1");
  InstanceOptions io;
  io.eta = opts.eta;
  io.k_exponent = opts.k_exponent;
  io.eps = opts.eps > 0.0 ? opts.eps : 1.0 / std::log(N);
  io.k = k;
  io.allow_degenerate = opts.allow_degenerate;
  ProblemInstance inst = make_instance(c, X, io);
  if (sieve_primes(X).empty()) throw std::invalid_argument("degenerate range: no prime in (X, 2X]");
  return inst;
}

bool recheck(std::span<const std::uint64_t> ps, double c, double R, double eps) {
  return std::abs(highprec::power_sum_minus(ps, c, R, 256)) < eps;
}

}  // namespace

ProblemInstance instance_for_theorem1(double N, double c, const SolverOptions& opts) {
  return instance_for(N, c, std::pow(N / 3.0, 1.0 / c), 3, opts);
}

ProblemInstance instance_for_theorem2(double N, double c, const SolverOptions& opts) {
  return instance_for(N, c, 0.5 * std::pow(N / 5.0, 1.0 / c), 6, opts);
}

Feasibility feasibility(const ProblemInstance& inst, double R) {
  Feasibility f;
  f.lower = inst.k * std::pow(inst.X, inst.c);
  f.upper = inst.k * std::pow(2.0 * inst.X, inst.c);
  f.feasible = f.lower - inst.eps < R && R < f.upper + inst.eps;
  return f;
}

TripleSolver::TripleSolver(const ProblemInstance& inst, PrimeTable primes) : inst_(inst), primes_(std::move(primes)) {
  const std::size_t n = primes_.size();
  if (static_cast<double>(n) * static_cast<double>(n) > kPairGuard) {
    throw std::length_error("TripleSolver: more than 1e8 prime pairs");
  }
  powers_.resize(n);
  for (std::size_t i = 0; i < n; ++i) powers_[i] = pow_dd(primes_[i], inst_.c);
  pairs_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      pairs_.push_back({powers_[i] + powers_[j], static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    }
  }
  std::sort(pairs_.begin(), pairs_.end(), [](const PairSum& a, const PairSum& b) {
    if (a.value != b.value) return a.value < b.value;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
}

template <typename Visit>
void TripleSolver::for_each_near(double R, double radius, std::size_t k, Visit&& visit) const {
  const DoubleDouble target(R);
  const DoubleDouble r(radius);
  const DoubleDouble vk = powers_[k];
  auto dev = [&](const PairSum& p) { return (p.value + vk) - target; };
  auto it = std::partition_point(pairs_.begin(), pairs_.end(), [&](const PairSum& p) { return dev(p) <= -r; });
  for (; it != pairs_.end(); ++it) {
    const DoubleDouble d = dev(*it);
    if (!(d < r)) break;
    visit(*it, d);
  }
}

TripleCount TripleSolver::count_B(double R, bool keep_records) const {
  TripleCount out;
  CompensatedSum<double> weighted;
  const auto logs = primes_.logs();
  for (std::size_t k = 0; k < powers_.size(); ++k) {
    for_each_near(R, inst_.eps, k, [&](const PairSum& p, const DoubleDouble& d) {
      ++out.unweighted;
      weighted.add(logs[p.i] * logs[p.j] * logs[k]);
      if (keep_records) {
        SolutionRecord rec;
        rec.primes = {primes_[p.i], primes_[p.j], primes_[k]};
        rec.value = (p.value + powers_[k]).to_double();
        rec.deviation = std::abs(d.to_double());
        rec.ambiguous = !recheck(rec.primes, inst_.c, R, inst_.eps);
        out.records.push_back(std::move(rec));
      }
    });
  }
  out.weighted = weighted.value();
  std::sort(out.records.begin(), out.records.end(),
            [](const SolutionRecord& a, const SolutionRecord& b) { return a.primes < b.primes; });
  return out;
}

double TripleSolver::weighted_B1(double R, const KernelParams& kernel) const {
  CompensatedSum<double> acc;
  const auto logs = primes_.logs();
  for (std::size_t k = 0; k < powers_.size(); ++k) {
    for_each_near(R, kernel.a + kernel.b, k, [&](const PairSum& p, const DoubleDouble& d) {
      acc.add(logs[p.i] * logs[p.j] * logs[k] * phi_eval(kernel, d.to_double()));
    });
  }
  return acc.value();
}

TripleCount count_B(const ProblemInstance& inst, double R, bool keep_records) {
  return TripleSolver(inst, sieve_primes(inst.X)).count_B(R, keep_records);
}

MainTermIntegrator::MainTermIntegrator(const ProblemInstance& inst, const KernelParams& kernel, int k, double R_max,
                                       unsigned workers)
    : inst_(inst), kernel_(kernel), k_(k), workers_(workers) {
  if (k < 1) throw std::invalid_argument("main term: k must be >= 1");
  kernel_.validate();
  const double f = k * std::pow(2.0 * inst.X, inst.c) + std::abs(R_max);
  step_ = 1.0 / (64.0 * f);
}

void MainTermIntegrator::extend_to(std::size_t points) {
  const std::size_t have = weight_.size();
  if (points <= have) return;
  weight_.resize(points);
  parallel_for(points - have, workers_, [&](std::size_t off) {
    const std::size_t i = have + off;
    const double x = static_cast<double>(i) * step_;
    weight_[i] = std::pow(integral_I(inst_, x).value, k_) * phi_fourier(kernel_, x);
  });
}

std::complex<double> MainTermIntegrator::simpson(double R, std::size_t points, std::size_t stride) const {
  // Composite Simpson over indices 0, stride, 2·stride, ..., points - 1.
  const std::size_t n = (points - 1) / stride;
  const double h = static_cast<double>(stride) * step_;
  const auto sum = deterministic_sum_complex(n + 1, 1, [&](std::size_t m) {
    const std::size_t i = m * stride;
    const double x = static_cast<double>(i) * step_;
    const double ph = -R * x;
    const double w = (m == 0 || m == n) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
    return w * weight_[i] * std::polar(1.0, 2.0 * std::numbers::pi * (ph - std::floor(ph)));
  });
  return sum * (h / 3.0);
}

double MainTermIntegrator::tail(double tp) const {
  const double k = k_;
  const double scale = std::pow(inst_.X, k * (inst_.c - 1.0));
  const double flat = 2.0 * 2.0 * kernel_.a / ((k - 1.0) * std::pow(tp, k - 1.0) * scale);
  const double decaying = 2.0 / (std::numbers::pi * k * std::pow(tp, k) * scale);
  return k > 1.0 ? std::min(flat, decaying) : decaying;
}

MainTerm MainTermIntegrator::operator()(double R) {
  constexpr std::size_t kMaxPoints = std::size_t{1} << 26;
  MainTerm out;
  // Start near one period of I and double.
  std::size_t intervals = 4 * static_cast<std::size_t>(std::ceil(std::pow(inst_.X, -inst_.c) / (4.0 * step_)));
  intervals = std::max<std::size_t>(intervals, 8);
  for (;;) {
    const std::size_t points = intervals + 1;
    if (points > kMaxPoints) {
      out.converged = false;
      return out;
    }
    extend_to(points);
    const std::complex<double> fine = simpson(R, points, 1);
    const std::complex<double> coarse = simpson(R, points, 2);
    out.tau_prime = static_cast<double>(intervals) * step_;
    out.value = 2.0 * ((16.0 * fine - coarse) / 15.0).real();
    out.error = 2.0 * std::abs(fine - coarse) / 15.0;
    out.tail_bound = tail(out.tau_prime);
    out.grid_points = points;
    if (out.tail_bound <= 1e-3 * std::abs(out.value)) {
      out.converged = true;
      return out;
    }
    intervals *= 2;
  }
}

MainTerm main_term_H(const ProblemInstance& inst, double R, int k, const KernelParams& kernel, unsigned workers) {
  MainTermIntegrator integ(inst, kernel, k, R, workers);
  return integ(R);
}

SextupleResult find_sextuple(const ProblemInstance& inst, double N, unsigned workers) {
  SextupleResult out;
  out.feasibility = feasibility(inst, N);
  if (!out.feasibility.feasible) return out;

  const PrimeTable table = sieve_primes(inst.X);
  const std::size_t n = table.size();
  const double np = static_cast<double>(n);
  if (np * (np + 1.0) * (np + 2.0) / 6.0 > kTripleTableGuard) {
    throw std::length_error("find_sextuple: triple table exceeds 1e8 entries");
  }
  struct Triple {
    DoubleDouble value;
    std::uint32_t i, j, k;
  };
  std::vector<DoubleDouble> pw(n);
  parallel_for(n, workers, [&](std::size_t i) { pw[i] = pow_dd(table[i], inst.c); });
  std::vector<Triple> triples;
  triples.reserve(static_cast<std::size_t>(np * (np + 1.0) * (np + 2.0) / 6.0));
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i; j < n; ++j) {
      for (std::uint32_t k = j; k < n; ++k) triples.push_back({pw[i] + pw[j] + pw[k], i, j, k});
    }
  }
  std::sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) {
    if (a.value != b.value) return a.value < b.value;
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  out.table_size = triples.size();

  const DoubleDouble target(N);
  const DoubleDouble eps(inst.eps);
  std::optional<SolutionRecord> fallback;
  out.best_deviation = std::numeric_limits<double>::infinity();
  for (const Triple& t : triples) {
    auto dev = [&](const Triple& u) { return (t.value + u.value) - target; };
    // Nearest partners on either side of N - t, for the miss distance.
    const auto mid =
        std::partition_point(triples.begin(), triples.end(), [&](const Triple& u) { return dev(u) < DoubleDouble(0.0); });
    if (mid != triples.end()) out.best_deviation = std::min(out.best_deviation, std::abs(dev(*mid).to_double()));
    if (mid != triples.begin()) {
      out.best_deviation = std::min(out.best_deviation, std::abs(dev(*(mid - 1)).to_double()));
    }
    auto it = std::partition_point(triples.begin(), triples.end(), [&](const Triple& u) { return dev(u) <= -eps; });
    for (; it != triples.end(); ++it) {
      const DoubleDouble d = dev(*it);
      if (!(d < eps)) break;
      SolutionRecord rec;
      rec.primes = {table[t.i], table[t.j], table[t.k], table[it->i], table[it->j], table[it->k]};
      rec.value = (t.value + it->value).to_double();
      rec.deviation = std::abs(d.to_double());
      rec.ambiguous = !recheck(rec.primes, inst.c, N, inst.eps);
      if (!rec.ambiguous) {
        out.record = std::move(rec);
        return out;
      }
      if (!fallback) fallback = std::move(rec);
    }
  }
  out.record = std::move(fallback);
  return out;
}

std::vector<double> sample_R(double N, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> Rs(samples);
  for (auto& R : Rs) {
    const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
    R = 2.0 * N - N * u;
  }
  return Rs;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

ScanReport exceptional_scan(const TripleSolver& solver, double N, std::size_t samples, std::uint64_t seed,
                            const KernelParams* kernel, unsigned workers) {
  ScanReport rep;
  rep.seed = seed;
  rep.N = N;
  rep.Rs = sample_R(N, samples, seed);
  rep.counts.resize(samples);
  if (kernel != nullptr) rep.B1.resize(samples);
  parallel_for(samples, workers, [&](std::size_t i) {
    rep.counts[i] = solver.count_B(rep.Rs[i]).unweighted;
    if (kernel != nullptr) rep.B1[i] = solver.weighted_B1(rep.Rs[i], *kernel);
  });

  std::uint64_t zeros = 0;
  double total = 0.0;
  std::vector<double> as_real;
  for (std::uint64_t c : rep.counts) {
    zeros += (c == 0);
    total += static_cast<double>(c);
    ++rep.histogram[c];
    as_real.push_back(static_cast<double>(c));
  }
  if (samples > 0) {
    rep.zero_fraction = static_cast<double>(zeros) / static_cast<double>(samples);
    rep.mean_count = total / static_cast<double>(samples);
    rep.median_count = median(as_real);
  }

  if (kernel != nullptr && samples > 0) {
    MainTermIntegrator integ(solver.instance(), *kernel, 3, *std::max_element(rep.Rs.begin(), rep.Rs.end()),
                             workers);
    std::vector<double> ratios;
    for (std::size_t i = 0; i < samples; ++i) {
      rep.H.push_back(integ(rep.Rs[i]).value);
      ratios.push_back(rep.B1[i] / rep.H[i]);
    }
    rep.median_ratio = median(ratios);
  }
  return rep;
}

}  // namespace dioprime
