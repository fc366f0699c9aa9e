#include "dioprime/exppair.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "dioprime/parallel.hpp"

namespace dioprime {

bool ExponentPair::is_admissible() const {
  const Rational half(1, 2);
  return kappa >= Rational(0) && kappa <= half && lambda >= half && lambda <= Rational(1);
}

ExponentPair a_process(const ExponentPair& p) {
  const Rational denom = Rational(2) * p.kappa + Rational(2);
  return {p.kappa / denom, (p.kappa + p.lambda + Rational(1)) / denom};
}

ExponentPair b_process(const ExponentPair& p) {
  const Rational half(1, 2);
  return {p.lambda - half, p.kappa + half};
}

ChainWord::ChainWord(std::string letters) : letters_(std::move(letters)) {
  for (char ch : letters_) {
    if (ch != 'A' && ch != 'B') throw std::invalid_argument(std::string("chain word: bad letter '") + ch + "'");
  }
}

ChainWord ChainWord::parse(std::string_view text) {
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  }
  std::string letters;
  std::size_t i = 0;
  while (i < compact.size()) {
    const char ch = compact[i++];
    if (ch == 'B') {
      letters += 'B';
      continue;
    }
    if (ch != 'A') {
      throw std::invalid_argument("chain word '" + std::string(text) + "': unexpected '" + ch + "'");
    }
    std::size_t run = 1;
    if (i < compact.size() && compact[i] == '^') {
      ++i;
      const std::size_t start = i;
      while (i < compact.size() && std::isdigit(static_cast<unsigned char>(compact[i]))) ++i;
      if (i == start || i - start > 6) {
        throw std::invalid_argument("chain word '" + std::string(text) + "': malformed run after 'A^'");
      }
      run = std::stoul(compact.substr(start, i - start));
      if (run == 0) throw std::invalid_argument("chain word '" + std::string(text) + "': A^0 is not allowed");
    }
    letters.append(run, 'A');
  }
  return ChainWord(std::move(letters));
}

std::string ChainWord::render() const {
  std::string out;
  std::size_t i = 0;
  while (i < letters_.size()) {
    if (letters_[i] == 'B') {
      out += 'B';
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == 'A') ++j;
    out += 'A';
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

ChainWord ChainWord::prepend(char letter) const { return ChainWord(std::string(1, letter) + letters_); }

bool shortlex_less(const ChainWord& a, const ChainWord& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.letters() < b.letters();
}

ExponentPair apply_word(const ChainWord& w, const ExponentPair& seed) {
  ExponentPair p = seed;
  const auto& letters = w.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) p = (*it == 'A') ? a_process(p) : b_process(p);
  return p;
}

ExponentPair apply_word(std::string_view w, const ExponentPair& seed) { return apply_word(ChainWord::parse(w), seed); }

double pair_bound(const ExponentPair& p, double lambda1, double a) {
  return std::pow(lambda1, p.kappa.to_double()) * std::pow(a, p.lambda.to_double()) + 1.0 / lambda1;
}

namespace {

struct Candidate {
  ExponentPair pair;
  ChainWord word;
  double value = 0.0;
};

// (value, length, letters)
bool better(const Candidate& x, const Candidate& y) {
  if (x.value != y.value) return x.value < y.value;
  return shortlex_less(x.word, y.word);
}

struct PairKeyLess {
  bool operator()(const ExponentPair& a, const ExponentPair& b) const {
    if (auto c = a.kappa <=> b.kappa; c != 0) return c < 0;
    return a.lambda < b.lambda;
  }
};

}  // namespace

SearchResult search_pairs(const PairObjective& objective, int max_depth, const SearchOptions& opts) {
  if (max_depth < 1) throw std::invalid_argument("search_pairs: max_depth must be >= 1");

  Candidate root{ExponentPair::trivial(), ChainWord{}, 0.0};
  root.value = objective(root.pair);
  Candidate best = root;
  bool exhaustive = true;

  std::set<ExponentPair, PairKeyLess> seen{root.pair};
  std::vector<Candidate> frontier{root};

  for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
    // Expand; within a level keep the lexicographically smallest word per pair.
    std::map<ExponentPair, ChainWord, PairKeyLess> level;
    for (const auto& cand : frontier) {
      for (char letter : {'A', 'B'}) {
        ExponentPair next = letter == 'A' ? a_process(cand.pair) : b_process(cand.pair);
        if (seen.count(next)) continue;
        ChainWord w = cand.word.prepend(letter);
        auto [it, inserted] = level.emplace(std::move(next), w);
        if (!inserted && w.letters() < it->second.letters()) it->second = std::move(w);
      }
    }
    std::vector<Candidate> next_frontier;
    next_frontier.reserve(level.size());
    for (auto& [pair, word] : level) {
      seen.insert(pair);
      next_frontier.push_back({pair, word, 0.0});
    }
    parallel_for(next_frontier.size(), opts.workers,
                 [&](std::size_t i) { next_frontier[i].value = objective(next_frontier[i].pair); });
    for (const auto& c : next_frontier) {
      if (better(c, best)) best = c;
    }
    if (next_frontier.size() > opts.beam_width) {
      exhaustive = false;
      std::partial_sort(next_frontier.begin(), next_frontier.begin() + static_cast<std::ptrdiff_t>(opts.beam_width),
                        next_frontier.end(), better);
      next_frontier.resize(opts.beam_width);
    }
    frontier = std::move(next_frontier);
  }
  return {best.pair, best.word, best.value, exhaustive};
}

}  // namespace dioprime
