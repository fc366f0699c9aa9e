#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "dioprime/rational.hpp"

namespace dioprime {

/// An exponent pair (κ, λ). Admissible pairs satisfy 0 ≤ κ ≤ 1/2 ≤ λ ≤ 1.
struct ExponentPair {
  Rational kappa;
  Rational lambda;

  static ExponentPair trivial() { return {Rational(0), Rational(1)}; }

  bool is_admissible() const;
  std::string str() const { return kappa.str() + " " + lambda.str(); }

  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// (κ, λ) -> (κ/(2κ+2), (κ+λ+1)/(2κ+2))
ExponentPair a_process(const ExponentPair& p);
/// (κ, λ) -> (λ - 1/2, κ + 1/2)
ExponentPair b_process(const ExponentPair& p);

/// A word over {A, B}. Letters are stored left to right as written; applying
/// the word to a seed folds from the right, so "A^2B" means A(A(B(seed))).
class ChainWord {
 public:
  ChainWord() = default;
  explicit ChainWord(std::string letters);

  /// Grammar: word := item* ; item := 'A' ['^' digits] | 'B'. Whitespace is
  /// ignored anywhere. Throws std::invalid_argument on anything else.
  static ChainWord parse(std::string_view text);

  const std::string& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Run-length form: "AAB" -> "A^2B". B runs are written out letter by
  /// letter since the grammar only allows exponents on A.
  std::string render() const;

  ChainWord prepend(char letter) const;

  friend bool operator==(const ChainWord&, const ChainWord&) = default;
  /// Shorter first, then lexicographic on the letters.
  friend bool shortlex_less(const ChainWord& a, const ChainWord& b);

 private:
  std::string letters_;
};

ExponentPair apply_word(const ChainWord& w, const ExponentPair& seed = ExponentPair::trivial());
ExponentPair apply_word(std::string_view w, const ExponentPair& seed = ExponentPair::trivial());

/// λ₁^κ · a^λ + λ₁^{-1}, the right-hand side of the exponent-pair bound for
/// Σ_{a<n≤b} e(f(n)) with |f^{(j)}| ≍ λ₁ a^{1-j}.
double pair_bound(const ExponentPair& p, double lambda1, double a);

using PairObjective = std::function<double(const ExponentPair&)>;

struct SearchOptions {
  /// Distinct pairs kept per level; below this the search is exhaustive.
  std::size_t beam_width = 1u << 14;
  unsigned workers = 1;
};

struct SearchResult {
  ExponentPair pair;
  ChainWord word;
  double value = 0.0;
  bool exhaustive = true;
};

/// Minimizes `objective` over all words of length <= max_depth applied to
/// (0,1). Ties go to the shorter word, then the lexicographically smaller.
/// Pairs reached by several words are kept once, under their best word.
SearchResult search_pairs(const PairObjective& objective, int max_depth, const SearchOptions& opts = {});

}  // namespace dioprime
