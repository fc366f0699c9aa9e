#include <stdexcept>
#include <vector>

#include "dioprime/monomial.hpp"

namespace dioprime {

Monomial monomial_cross(const Monomial& termA, const Monomial& termB, const std::string& q) {
  const Rational a = termA.exponent(q);
  const Rational b = -termB.exponent(q);
  if (a.sign() <= 0) {
    throw std::invalid_argument("monomial_cross: first term needs a positive " + q + "-exponent, got " +
                                termA.str());
  }
  if (b.sign() <= 0) {
    throw std::invalid_argument("monomial_cross: second term needs a negative " + q + "-exponent, got " +
                                termB.str());
  }
  // (A^b B^a)^{1/(a+b)}
  const Rational inv = Rational(1) / (a + b);
  return termA.without(q).pow(b * inv) * termB.without(q).pow(a * inv);
}

BoundExpr gk_optimize(const BoundExpr& terms, const Monomial& q1, const Monomial& q2, const std::string& q) {
  if (q1.contains(q) || q2.contains(q)) {
    throw std::invalid_argument("gk_optimize: endpoints must be free of " + q);
  }
  std::vector<Monomial> increasing;
  std::vector<Monomial> decreasing;
  BoundExpr out;
  for (const auto& t : terms) {
    const int s = t.exponent(q).sign();
    if (s > 0) {
      increasing.push_back(t);
      out.add(t.substitute(q, q1));
    } else if (s < 0) {
      decreasing.push_back(t);
      out.add(t.substitute(q, q2));
    } else {
      out.add(t);
    }
  }
  for (const auto& inc : increasing) {
    for (const auto& dec : decreasing) out.add(monomial_cross(inc, dec, q));
  }
  return out;
}

BoundExpr bound_root(const BoundExpr& expr, long k) {
  if (k < 1) throw std::invalid_argument("bound_root: k must be >= 1");
  const Rational inv(1, k);
  BoundExpr out;
  for (const auto& t : expr) out.add(t.pow(inv));
  return out;
}

namespace {

// a <= b in every exponent (absent symbols count as 0)
bool componentwise_le(const Monomial& a, const Monomial& b) {
  for (const auto& [sym, e] : a.exponents()) {
    if (e > b.exponent(sym)) return false;
  }
  for (const auto& [sym, e] : b.exponents()) {
    if (!a.contains(sym) && e.sign() < 0) return false;
  }
  return true;
}

}  // namespace

BoundExpr prune_dominated(const BoundExpr& expr, std::vector<DominatedTerm>* removed) {
  BoundExpr out;
  for (const auto& t : expr) {
    const Monomial* dominator = nullptr;
    for (const auto& u : expr) {
      if (u != t && componentwise_le(t, u)) {
        dominator = &u;
        break;
      }
    }
    if (dominator == nullptr) {
      out.add(t);
    } else if (removed != nullptr) {
      removed->push_back({t, *dominator});
    }
  }
  return out;
}

}  // namespace dioprime
