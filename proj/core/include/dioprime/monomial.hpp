#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dioprime/rational.hpp"

namespace dioprime {

/// Symbol order used for canonical rendering: M, L, F, Q, X, K first (in that
/// order), then any other name alphabetically. Symbols are case-sensitive.
struct SymbolOrder {
  bool operator()(const std::string& a, const std::string& b) const;
};

/// Coefficient-free product of named symbols raised to rational exponents.
/// Zero exponents are never stored, so the empty map is the constant 1.
class Monomial {
 public:
  using Exponents = std::map<std::string, Rational, SymbolOrder>;

  Monomial() = default;
  Monomial(std::initializer_list<std::pair<const std::string, Rational>> factors);
  explicit Monomial(Exponents factors);

  static Monomial symbol(std::string name, Rational exponent = 1);

  /// Parses `M^{34/37}*L^{31/37}*F`, `M^2*Q^{-1}`, or `1`.
  static Monomial parse(std::string_view text);

  const Exponents& exponents() const { return exps_; }
  Rational exponent(const std::string& sym) const;
  bool is_constant() const { return exps_.empty(); }
  bool contains(const std::string& sym) const { return exps_.count(sym) != 0; }

  Monomial& operator*=(const Monomial& o);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  /// Every exponent multiplied by `power`.
  Monomial pow(const Rational& power) const;
  /// Removes `sym` and multiplies by `replacement^{exp(sym)}`.
  Monomial substitute(const std::string& sym, const Monomial& replacement) const;
  /// Copy with `sym` removed.
  Monomial without(const std::string& sym) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Canonical order: factor sequences compared lexicographically by symbol
  /// (in SymbolOrder) then exponent.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

  std::string str() const;

 private:
  void set(const std::string& sym, Rational e);

  Exponents exps_;
};

/// Sum of monomials with implied constants dropped. Duplicates collapse, so
/// this is a set; `a ≪ b` bounds compare as sets of dominant shapes.
class BoundExpr {
 public:
  using Terms = std::set<Monomial>;

  BoundExpr() = default;
  BoundExpr(std::initializer_list<Monomial> terms) : terms_(terms) {}
  explicit BoundExpr(Terms terms) : terms_(std::move(terms)) {}
  template <typename It>
  BoundExpr(It first, It last) : terms_(first, last) {}

  /// Parses terms joined by `+`, e.g. `M^{14}*L^{13}*F + M^{61/4}*L^{15}`.
  static BoundExpr parse(std::string_view text);

  void add(Monomial m) { terms_.insert(std::move(m)); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  bool contains(const Monomial& m) const { return terms_.count(m) != 0; }

  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  friend bool operator==(const BoundExpr&, const BoundExpr&) = default;

  /// Canonical text: sorted terms joined by " + ".
  std::string str() const;

 private:
  Terms terms_;
};

/// The cross term (A^b B^a)^{1/(a+b)} for termA = A·Q^a and termB = B·Q^{-b}
/// with a, b > 0. The result is Q-free.
Monomial monomial_cross(const Monomial& termA, const Monomial& termB, const std::string& q = "Q");

/// Graham–Kolesnik balancing over Q ∈ [q1, q2]: increasing terms at q1,
/// decreasing terms at q2, Q-free terms unchanged, and one cross term for each
/// (increasing, decreasing) pair. No dominance pruning is applied.
BoundExpr gk_optimize(const BoundExpr& terms, const Monomial& q1, const Monomial& q2,
                      const std::string& q = "Q");

/// Divides every exponent by k (the k-th root of the bound). Requires k >= 1.
BoundExpr bound_root(const BoundExpr& expr, long k);

/// Terms removed by prune_dominated, with one term that dominates each.
struct DominatedTerm {
  Monomial term;
  Monomial dominated_by;
};

/// Drops every term whose exponents are componentwise <= those of another
/// term. Valid when every symbol ranges over [1, ∞), which holds for the
/// M, L, F of the bilinear bounds. Removed terms go to `removed` if given.
BoundExpr prune_dominated(const BoundExpr& expr, std::vector<DominatedTerm>* removed = nullptr);

}  // namespace dioprime
