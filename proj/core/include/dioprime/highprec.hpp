#pragma once

// Multi-precision reference evaluations (MPFR). Used to re-validate solver
// hits and as precision oracles; never on hot paths.

#include <complex>
#include <cstdint>
#include <span>
#include <string>

namespace dioprime::highprec {

/// Σ n_i^c - target, evaluated with `bits` of precision, rounded to double.
double power_sum_minus(std::span<const std::uint64_t> ns, double c, double target, int bits = 256);

/// Σ w_i e(n_i^c x) with all arithmetic at `bits` precision; weights are
/// log n_i when `log_weights`, otherwise 1.
std::complex<double> exp_sum(std::span<const std::uint64_t> ns, double c, double x, bool log_weights,
                             int bits = 256);

}  // namespace dioprime::highprec
