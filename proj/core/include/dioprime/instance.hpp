#pragma once

#include <string>

namespace dioprime {

/// Parameters tying one Diophantine experiment together.
///
/// Defaults follow the usual choices: τ = X^{1-c-η}, K = (log X)^{k_exponent}
/// with k_exponent = 10, E = exp(-(log X)^{1/5}). c = 1 is accepted only as an
/// explicitly flagged degenerate test mode, where closed forms exist.
struct ProblemInstance {
  double c = 1.5;
  double X = 0.0;
  double eps = 0.0;
  double tau = 0.0;
  double K = 0.0;
  int k = 3;
  double eta = 0.05;
  double k_exponent = 10.0;
  bool degenerate = false;

  double log_X() const;
  /// exp(-(log X)^{1/5}); carried for reporting only.
  double E() const;

  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

struct InstanceOptions {
  double eta = 0.05;
  double k_exponent = 10.0;
  /// Defaults to (log X)^{-4} when unset (<= 0).
  double eps = 0.0;
  int k = 3;
  bool allow_degenerate = false;
};

/// Fills τ, K, ε from (c, X) and validates.
ProblemInstance make_instance(double c, double X, const InstanceOptions& opts = {});

}  // namespace dioprime
