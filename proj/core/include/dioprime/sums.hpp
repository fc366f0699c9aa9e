#pragma once

// Exponential sums over integers and primes in (X, 2X], the integral I(x),
// fourth moments over [-τ, τ] and a few finite inequalities used as checks.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "dioprime/ddouble.hpp"
#include "dioprime/instance.hpp"
#include "dioprime/primes.hpp"

namespace dioprime {

using cplx = std::complex<double>;

/// Σ w_i e(v_i x) with v_i = n_i^c cached in double-double. Immutable and
/// safe to evaluate from several threads.
class PhaseSum {
 public:
  /// `weights` empty means all ones.
  PhaseSum(std::span<const std::uint64_t> ns, double c, std::span<const double> weights = {});

  cplx operator()(double x, unsigned workers = 1) const;
  std::size_t size() const { return values_.size(); }
  std::span<const DoubleDouble> values() const { return values_; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<DoubleDouble> values_;
  std::vector<double> weights_;
};

/// e(θ) = exp(2πiθ) for a phase already reduced mod 1.
cplx unit_phase(double theta);

std::vector<std::uint64_t> integers_in(double X);
PhaseSum make_T(const ProblemInstance& inst);
PhaseSum make_S(const ProblemInstance& inst, const PrimeTable& primes);

/// T(x) = Σ_{X<n≤2X} e(n^c x).
cplx sum_T(const ProblemInstance& inst, double x, unsigned workers = 1);
/// S(x) = Σ_{X<p≤2X} log p · e(p^c x).
cplx sum_S(const ProblemInstance& inst, const PrimeTable& primes, double x, unsigned workers = 1);

struct IntegralValue {
  cplx value;
  double error = 0.0;
  bool converged = true;
};

/// I(x) = ∫_X^{2X} e(t^c x) dt.
///
/// Near x = 0 this is adaptive Simpson over panels no wider than a quarter of
/// the local period 1/(c t^{c-1}|x|), absolute tolerance 1e-9·X. Once
/// 2π|x|X^c is large the endpoint expansion obtained from u = t^c and
/// repeated integration by parts converges geometrically and is used instead.
IntegralValue integral_I(const ProblemInstance& inst, double x);

/// Quadrature route only, whatever x is. Slow for large |x|X^c.
IntegralValue integral_I_quadrature(const ProblemInstance& inst, double x);

/// Endpoint expansion only; converged = false when the series stalls.
IntegralValue integral_I_asymptotic(const ProblemInstance& inst, double x);

enum class MomentOf { S, I };

struct MomentResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evals = 0;
  bool converged = true;
};

/// ∫_{-τ}^{τ} |S(x)|^4 dx or the same for I. The integrand is even, so this
/// is twice the integral over [0, τ]. Panels have width X^{-c}/8 for S; for I
/// they start there and coarsen geometrically past 32·X^{-c}.
MomentResult moment4(const ProblemInstance& inst, MomentOf which, const PrimeTable* primes = nullptr,
                     unsigned workers = 1);

struct ProfilePoint {
  double x = 0.0;
  double diff = 0.0;
  cplx S;
  cplx I;
};

struct Profile {
  std::vector<ProfilePoint> points;
  double max_diff = 0.0;
};

/// |S(x) - I(x)| at each x; throws std::invalid_argument if some |x| > τ.
Profile s_minus_i_profile(const ProblemInstance& inst, const PrimeTable& primes, std::span<const double> xs,
                          unsigned workers = 1);

/// n Chebyshev points τ·cos((2j+1)π/(2n)).
std::vector<double> chebyshev_points(double tau, std::size_t n);

struct WeylCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds() const { return lhs <= rhs * (1.0 + 1e-12) + 1e-12; }
};

/// Both sides of |Σ z_m|^2 ≤ (2 + M/Q) Σ_{|q|<Q} (1 - |q|/Q) Σ z_{m+q} conj(z_{m-q})
/// for z indexed over (M, 2M], M = z.size(). Throws std::invalid_argument on
/// empty z or Q < 1.
WeylCheck weyl_differencing_check(std::span<const cplx> z, std::int64_t Q);

inline constexpr double kBilinearGuard = 1e9;

/// Σ_{m_lo<m≤m_hi} Σ_{l_lo<l≤l_hi} a(m) b(l) e(x m^c l^c). `a` has one entry
/// per m; `b` empty means b ≡ 1. Throws std::length_error past 1e9 terms.
cplx bilinear_sum(std::uint64_t m_lo, std::uint64_t m_hi, std::uint64_t l_lo, std::uint64_t l_hi,
                  std::span<const double> a, std::span<const double> b, double c, double x, unsigned workers = 1);

/// CSV with header x,re,im,abs.
void write_sum_csv(std::ostream& out, std::span<const double> xs, std::span<const cplx> values);

}  // namespace dioprime
