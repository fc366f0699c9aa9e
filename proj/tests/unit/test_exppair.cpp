#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dioprime/exppair.hpp"
#include "dioprime/parallel.hpp"

using namespace dioprime;

namespace {

ExponentPair pair(std::int64_t kn, std::int64_t kd, std::int64_t ln, std::int64_t ld) {
  return {Rational(kn, kd), Rational(ln, ld)};
}

const char* kLongChain = "ABA^2BABABABABABABA^2BA^2BA^2BA^2B";

}  // namespace

TEST(ExpPair, AProcessExamples) {
  EXPECT_EQ(a_process(ExponentPair::trivial()), ExponentPair::trivial());
  EXPECT_EQ(a_process(pair(1, 2, 1, 2)), pair(1, 6, 2, 3));
  EXPECT_EQ(a_process(pair(1, 6, 2, 3)), pair(1, 14, 11, 14));
}

TEST(ExpPair, BProcessExamples) {
  EXPECT_EQ(b_process(ExponentPair::trivial()), pair(1, 2, 1, 2));
  EXPECT_EQ(b_process(pair(1, 2, 1, 2)), ExponentPair::trivial());
  EXPECT_EQ(b_process(pair(1, 14, 11, 14)), pair(2, 7, 4, 7));
}

TEST(ExpPair, BIsAnInvolution) {
  for (const char* w : {"", "B", "AB", "A^2B", "A^3B", "BA^2B"}) {
    const ExponentPair p = apply_word(w);
    EXPECT_EQ(b_process(b_process(p)), p) << w;
  }
}

TEST(ExpPair, ApplyWordFixtures) {
  EXPECT_EQ(apply_word("B"), pair(1, 2, 1, 2));
  EXPECT_EQ(apply_word("AB"), pair(1, 6, 2, 3));
  EXPECT_EQ(apply_word("A^2B"), pair(1, 14, 11, 14));
  EXPECT_EQ(apply_word("A^3B"), pair(1, 30, 13, 15));
  EXPECT_EQ(apply_word("A^3B").lambda.str(), "13/15");
  EXPECT_EQ(apply_word(kLongChain), pair(156989, 1244758, 875691, 1244758));
  EXPECT_EQ(ChainWord::parse(kLongChain).length(), 29u);
}

TEST(ExpPair, WordsComposeRightToLeft) {
  const ExponentPair inner = apply_word("BA^2B");
  EXPECT_EQ(apply_word("A^2B", inner), apply_word("A^2BBA^2B"));
  EXPECT_EQ(apply_word("A", apply_word("B")), apply_word("AB"));
}

// Every word up to length 10 keeps the pair admissible.
TEST(ExpPair, AdmissibleUpToDepthTen) {
  std::vector<ExponentPair> level{ExponentPair::trivial()};
  for (int d = 0; d < 10; ++d) {
    std::vector<ExponentPair> next;
    for (const auto& p : level) {
      for (const ExponentPair& q : {a_process(p), b_process(p)}) {
        ASSERT_TRUE(q.is_admissible()) << q.str();
        next.push_back(q);
      }
    }
    level = std::move(next);
  }
  EXPECT_EQ(level.size(), 1024u);
}

TEST(ChainWord, ParseAndRender) {
  EXPECT_EQ(ChainWord::parse("AA").render(), "A^2");
  EXPECT_EQ(ChainWord::parse("A BA^2 BA B").render(), "ABA^2BAB");
  EXPECT_EQ(ChainWord::parse("BB").render(), "BB");
  EXPECT_EQ(ChainWord::parse("").render(), "");
  EXPECT_EQ(ChainWord::parse(kLongChain).render(), kLongChain);
  EXPECT_THROW(ChainWord::parse("C"), std::invalid_argument);
  EXPECT_THROW(ChainWord::parse("B^2"), std::invalid_argument);
  EXPECT_THROW(ChainWord::parse("A^"), std::invalid_argument);
  EXPECT_THROW(ChainWord::parse("A^0"), std::invalid_argument);
}

TEST(ExpPair, PairBoundExamples) {
  EXPECT_DOUBLE_EQ(pair_bound(ExponentPair::trivial(), 1.0, 100.0), 101.0);
  EXPECT_DOUBLE_EQ(pair_bound(pair(1, 30, 13, 15), 1.0, 1.0), 2.0);
  const double v = pair_bound(pair(1, 14, 11, 14), 1e4, 1e3);
  EXPECT_NEAR(v, std::pow(10.0, 37.0 / 14.0) + 1e-4, 1e-9 * v);
}

TEST(SearchPairs, DepthOneKappaPrefersEmptyWord) {
  const auto r = search_pairs([](const ExponentPair& p) { return p.kappa.to_double(); }, 1);
  EXPECT_EQ(r.word.letters(), "");
  EXPECT_EQ(r.pair, ExponentPair::trivial());
}

// Exhaustive enumeration of every word of length ≤ 4 is the oracle here.
TEST(SearchPairs, KappaPlusLambdaDepthFour) {
  auto objective = [](const ExponentPair& p) { return (p.kappa + p.lambda).to_double(); };
  double best = INFINITY;
  std::string best_word;
  for (int len = 0; len <= 4; ++len) {
    for (int bits = 0; bits < (1 << len); ++bits) {
      std::string w;
      for (int i = 0; i < len; ++i) w += (bits >> i & 1) ? 'B' : 'A';
      const double v = objective(apply_word(ChainWord(w).render()));
      if (v < best - 1e-15) {
        best = v;
        best_word = w;
      }
    }
  }
  const auto r = search_pairs(objective, 4);
  EXPECT_DOUBLE_EQ(r.value, best);
  EXPECT_EQ(r.pair, apply_word(ChainWord(best_word).render()));
  EXPECT_EQ(r.word.render(), "AB");
  EXPECT_EQ(r.pair, pair(1, 6, 2, 3));
}

TEST(SearchPairs, DepthThirtyBeatsLongChain) {
  const double c = 2.1;
  auto objective = [c](const ExponentPair& p) {
    return p.kappa.to_double() * c + p.lambda.to_double() - p.kappa.to_double();
  };
  const double baseline = objective(apply_word(kLongChain));
  SearchOptions opts;
  opts.workers = 4;
  const auto r = search_pairs(objective, 30, opts);
  EXPECT_LE(r.value, baseline);
  EXPECT_EQ(apply_word(r.word.render()), r.pair);
}

TEST(SearchPairs, WorkerCountDoesNotChangeResult) {
  auto objective = [](const ExponentPair& p) { return 1.7 * p.kappa.to_double() + p.lambda.to_double(); };
  SearchOptions one;
  one.beam_width = 256;
  SearchOptions many = one;
  many.workers = 8;
  const auto a = search_pairs(objective, 18, one);
  const auto b = search_pairs(objective, 18, many);
  EXPECT_EQ(a.word, b.word);
  EXPECT_EQ(a.pair, b.pair);
}

// |Σ_{a<n≤2a} e(f(n))| against λ₁^κ a^λ + 1/λ₁ for f(n) = F(n/a)^{3/2}, with
// λ₁ = F/a the first-derivative scale. Constants are implied, so allow 40×.
TEST(ExpPair, PairBoundDominatesDirectSums) {
  for (const char* w : {"B", "AB", "A^2B", "A^3B"}) {
    const ExponentPair p = apply_word(w);
    for (double a : {200.0, 1000.0, 4000.0}) {
      for (double F : {1e3, 1e5, 1e7}) {
        const auto n0 = static_cast<std::size_t>(a);
        const std::complex<double> s = deterministic_sum_complex(n0, 1, [&](std::size_t i) {
          const double n = static_cast<double>(n0 + 1 + i);
          const double ph = F * std::pow(n / a, 1.5);
          return std::polar(1.0, 2.0 * std::numbers::pi * (ph - std::floor(ph)));
        });
        EXPECT_LE(std::abs(s), 40.0 * pair_bound(p, F / a, a)) << w << " a=" << a << " F=" << F;
      }
    }
  }
}

TEST(ExpPair, FixturesAreFast) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 10; ++i) {
    (void)apply_word("AB");
    (void)apply_word("A^2B");
    (void)apply_word("A^3B");
    (void)apply_word(kLongChain);
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 10 * 1e-3);
}
