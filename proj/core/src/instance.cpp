#include "dioprime/instance.hpp"

#include <cmath>
#include <stdexcept>

namespace dioprime {

double ProblemInstance::log_X() const { return std::log(X); }

double ProblemInstance::E() const { return std::exp(-std::pow(log_X(), 0.2)); }

void ProblemInstance::validate() const {
  if (degenerate) {
    if (c != 1.0) throw std::invalid_argument("degenerate mode requires c = 1");
    if (!(X >= 1.0)) throw std::invalid_argument("X must be >= 1");
  } else {
    if (!(c > 1.0 && c < 3.0) || c == 2.0) throw std::invalid_argument("c must lie in (1,3) with c != 2");
    if (!(X >= 3.0)) throw std::invalid_argument("X must be >= 3");
    if (!(tau < K)) throw std::invalid_argument("tau must be < K");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
}

ProblemInstance make_instance(double c, double X, const InstanceOptions& opts) {
  ProblemInstance inst;
  inst.c = c;
  inst.X = X;
  inst.eta = opts.eta;
  inst.k_exponent = opts.k_exponent;
  inst.k = opts.k;
  inst.degenerate = (c == 1.0);
  if (inst.degenerate && !opts.allow_degenerate) {
    throw std::invalid_argument("c = 1 is only accepted in degenerate test mode");
  }
  const double L = std::log(X);
  inst.tau = std::pow(X, 1.0 - c - opts.eta);
  inst.K = std::pow(L, opts.k_exponent);
  inst.eps = opts.eps > 0.0 ? opts.eps : std::pow(L, -4.0);
  inst.validate();
  return inst;
}

}  // namespace dioprime
