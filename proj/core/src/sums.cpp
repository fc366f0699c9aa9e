#include "dioprime/sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "dioprime/parallel.hpp"
#include "dioprime/quadrature.hpp"

namespace dioprime {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 2π|x|X^c above which the endpoint expansion is used for I(x).
constexpr double kAsymptoticThreshold = 50.0;

double fourth(double v) {
  const double s = v * v;
  return s * s;
}

}  // namespace

cplx unit_phase(double theta) { return std::polar(1.0, kTwoPi * theta); }

PhaseSum::PhaseSum(std::span<const std::uint64_t> ns, double c, std::span<const double> weights)
    : values_(ns.size()), weights_(weights.begin(), weights.end()) {
  if (!weights_.empty() && weights_.size() != ns.size()) {
    throw std::invalid_argument("PhaseSum: weights and points differ in length");
  }
  parallel_for((ns.size() + kReductionBlock - 1) / kReductionBlock, std::thread::hardware_concurrency(),
               [&](std::size_t b) {
                 const std::size_t hi = std::min(ns.size(), (b + 1) * kReductionBlock);
                 for (std::size_t i = b * kReductionBlock; i < hi; ++i) values_[i] = pow_dd(ns[i], c);
               });
}

cplx PhaseSum::operator()(double x, unsigned workers) const {
  if (x == 0.0) {
    if (weights_.empty()) return {static_cast<double>(values_.size()), 0.0};
    return {deterministic_sum<double>(weights_.size(), workers, [&](std::size_t i) { return weights_[i]; }), 0.0};
  }
  return deterministic_sum_complex(values_.size(), workers, [&](std::size_t i) {
    const cplx e = unit_phase(frac(values_[i] * x));
    return weights_.empty() ? e : weights_[i] * e;
  });
}

std::vector<std::uint64_t> integers_in(double X) {
  const auto lo = static_cast<std::uint64_t>(std::floor(X));
  const auto hi = static_cast<std::uint64_t>(std::floor(2.0 * X));
  std::vector<std::uint64_t> ns;
  ns.reserve(hi - lo);
  for (std::uint64_t n = lo + 1; n <= hi; ++n) ns.push_back(n);
  return ns;
}

PhaseSum make_T(const ProblemInstance& inst) {
  const auto ns = integers_in(inst.X);
  return PhaseSum(ns, inst.c);
}

PhaseSum make_S(const ProblemInstance& inst, const PrimeTable& primes) {
  return PhaseSum(primes.primes(), inst.c, primes.logs());
}

cplx sum_T(const ProblemInstance& inst, double x, unsigned workers) { return make_T(inst)(x, workers); }

cplx sum_S(const ProblemInstance& inst, const PrimeTable& primes, double x, unsigned workers) {
  return make_S(inst, primes)(x, workers);
}

IntegralValue integral_I_quadrature(const ProblemInstance& inst, double x) {
  const double X = inst.X;
  const double c = inst.c;
  if (x == 0.0) return {cplx(X, 0.0), 0.0, true};
  const double ax = std::abs(x);
  auto width = [&](double t) { return 0.25 / (c * std::pow(t, c - 1.0) * ax); };

  std::vector<double> breaks{X};
  for (double t = X; t < 2.0 * X;) {
    double w = width(t);
    w = std::min({w, width(std::min(t + w, 2.0 * X)), X});
    t = std::min(t + w, 2.0 * X);
    breaks.push_back(t);
  }
  auto f = [&](double t) {
    const double ph = x * std::pow(t, c);
    return unit_phase(ph - std::floor(ph));
  };
  const auto r = quad::integrate<cplx>(f, std::span<const double>(breaks), 1e-9 * X);
  return {r.value, r.error, r.converged};
}

IntegralValue integral_I_asymptotic(const ProblemInstance& inst, double x) {
  const double c = inst.c;
  if (x == 0.0) return {cplx(inst.X, 0.0), 0.0, false};
  const double beta = 1.0 / c - 1.0;
  // ∫_{U1}^{U2} g(u) e(xu) du with g(u) = u^β / c, expanded as
  // Σ_k (-1)^k g^{(k)}(u) e(xu) / (2πix)^{k+1} at both endpoints.
  const cplx step = 1.0 / cplx(0.0, kTwoPi * x);
  auto endpoint = [&](double t, bool& ok, double& err) {
    const double u = std::pow(t, c);
    const double ph = x * u;
    const cplx e = unit_phase(ph - std::floor(ph));
    cplx term = std::pow(u, beta) / c * step;  // k = 0
    cplx acc = term;
    double prev = std::abs(term);
    for (int k = 0; k < 400; ++k) {
      term *= -(beta - k) / u * step;
      const double mag = std::abs(term);
      if (mag == 0.0) {
        err = 0.0;
        return acc * e;
      }
      if (mag > prev) break;  // series started to diverge
      acc += term;
      prev = mag;
      if (mag <= 1e-17 * std::abs(acc)) {
        err = mag;
        return acc * e;
      }
    }
    ok = false;
    err = prev;
    return acc * e;
  };
  bool ok = true;
  double e1 = 0.0;
  double e2 = 0.0;
  const cplx hi = endpoint(2.0 * inst.X, ok, e1);
  const cplx lo = endpoint(inst.X, ok, e2);
  return {hi - lo, e1 + e2, ok};
}

IntegralValue integral_I(const ProblemInstance& inst, double x) {
  if (x == 0.0) return {cplx(inst.X, 0.0), 0.0, true};
  if (kTwoPi * std::abs(x) * std::pow(inst.X, inst.c) >= kAsymptoticThreshold) {
    auto r = integral_I_asymptotic(inst, x);
    if (r.converged && r.error <= 1e-12 * inst.X) return r;
  }
  return integral_I_quadrature(inst, x);
}

MomentResult moment4(const ProblemInstance& inst, MomentOf which, const PrimeTable* primes, unsigned workers) {
  const double scale = std::pow(inst.X, -inst.c);
  const double h0 = scale / 8.0;
  const double tau = inst.tau;

  std::vector<double> breaks{0.0};
  if (which == MomentOf::S) {
    const auto n = static_cast<std::size_t>(std::ceil(tau / h0));
    for (std::size_t j = 1; j <= n; ++j) breaks.push_back(std::min(tau, static_cast<double>(j) * h0));
  } else {
    const double x1 = 256.0 * scale;
    for (double t = h0; t < tau; t += (t < x1 ? h0 : 0.1 * t)) breaks.push_back(t);
    breaks.push_back(tau);
  }

  MomentResult out;
  quad::Result<double> r;
  if (which == MomentOf::S) {
    if (primes == nullptr) throw std::invalid_argument("moment4: S needs a prime table");
    const PhaseSum S = make_S(inst, *primes);
    const double sup = S(0.0).real();
    auto f = [&](double x) { return fourth(std::abs(S(x))); };
    r = quad::integrate_parallel<double>(f, breaks, 1e-9 * fourth(sup) * tau, workers);
  } else {
    auto f = [&](double x) { return fourth(std::abs(integral_I(inst, x).value)); };
    r = quad::integrate_parallel<double>(f, breaks, 1e-9 * fourth(inst.X) * tau, workers);
  }
  out.value = 2.0 * r.value;
  out.error = 2.0 * r.error;
  out.evals = r.evals;
  out.converged = r.converged;
  return out;
}

std::vector<double> chebyshev_points(double tau, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t j = 0; j < n; ++j) {
    xs[j] = tau * std::cos((2.0 * static_cast<double>(j) + 1.0) * std::numbers::pi / (2.0 * static_cast<double>(n)));
  }
  return xs;
}

Profile s_minus_i_profile(const ProblemInstance& inst, const PrimeTable& primes, std::span<const double> xs,
                          unsigned workers) {
  for (double x : xs) {
    if (!(std::abs(x) <= inst.tau)) throw std::invalid_argument("s_minus_i_profile: |x| exceeds tau");
  }
  const PhaseSum S = make_S(inst, primes);
  Profile prof;
  prof.points.resize(xs.size());
  parallel_for(xs.size(), workers, [&](std::size_t i) {
    ProfilePoint& p = prof.points[i];
    p.x = xs[i];
    p.S = S(xs[i]);
    p.I = integral_I(inst, xs[i]).value;
    p.diff = std::abs(p.S - p.I);
  });
  for (const auto& p : prof.points) prof.max_diff = std::max(prof.max_diff, p.diff);
  return prof;
}

WeylCheck weyl_differencing_check(std::span<const cplx> z, std::int64_t Q) {
  if (z.empty()) throw std::invalid_argument("weyl_differencing_check: empty sequence");
  if (Q < 1) throw std::invalid_argument("weyl_differencing_check: Q must be >= 1");
  const auto M = static_cast<std::int64_t>(z.size());
  CompensatedSum<double> re;
  CompensatedSum<double> im;
  for (const cplx& v : z) {
    re.add(v.real());
    im.add(v.imag());
  }
  WeylCheck out;
  out.lhs = std::norm(cplx(re.value(), im.value()));

  // Offsets are relative to M + 1, so index i ↔ m = M + 1 + i.
  CompensatedSum<double> total;
  for (std::int64_t q = -(Q - 1); q <= Q - 1; ++q) {
    const std::int64_t aq = q < 0 ? -q : q;
    CompensatedSum<double> inner;
    for (std::int64_t i = aq; i + aq < M; ++i) inner.add((z[i + q] * std::conj(z[i - q])).real());
    total.add((1.0 - static_cast<double>(aq) / static_cast<double>(Q)) * inner.value());
  }
  out.rhs = (2.0 + static_cast<double>(M) / static_cast<double>(Q)) * total.value();
  return out;
}

cplx bilinear_sum(std::uint64_t m_lo, std::uint64_t m_hi, std::uint64_t l_lo, std::uint64_t l_hi,
                  std::span<const double> a, std::span<const double> b, double c, double x, unsigned workers) {
  if (m_hi < m_lo || l_hi < l_lo) throw std::invalid_argument("bilinear_sum: empty or reversed range");
  const std::uint64_t nm = m_hi - m_lo;
  const std::uint64_t nl = l_hi - l_lo;
  if (static_cast<double>(nm) * static_cast<double>(nl) > kBilinearGuard) {
    throw std::length_error("bilinear_sum: more than 1e9 terms");
  }
  if (a.size() != nm) throw std::invalid_argument("bilinear_sum: need one a(m) per m");
  if (!b.empty() && b.size() != nl) throw std::invalid_argument("bilinear_sum: need one b(l) per l");
  return deterministic_sum_complex(nm * nl, workers, [&](std::size_t idx) {
    const std::uint64_t i = idx / nl;
    const std::uint64_t j = idx % nl;
    const double w = a[i] * (b.empty() ? 1.0 : b[j]);
    if (w == 0.0) return cplx{};
    const DoubleDouble v = pow_dd((m_lo + 1 + i) * (l_lo + 1 + j), c);
    return w * unit_phase(frac(v * x));
  });
}

void write_sum_csv(std::ostream& out, std::span<const double> xs, std::span<const cplx> values) {
  if (xs.size() != values.size()) throw std::invalid_argument("write_sum_csv: length mismatch");
  const auto old = out.precision(17);
  out << "x,re,im,abs\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << xs[i] << ',' << values[i].real() << ',' << values[i].imag() << ',' << std::abs(values[i]) << '\n';
  }
  out.precision(old);
}

}  // namespace dioprime
