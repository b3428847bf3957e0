#include "branchcalc/growth.hpp"

#include <cmath>

#include "branchcalc/engine.hpp"
#include "branchcalc/errors.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace branchcalc {
namespace {

using testing::seq_7_11_13;
using testing::seq_of;

// Every word of length exactly n over a^{+-1}, b^{+-1}, unreduced.
std::vector<Word> all_words(std::size_t n) {
  std::vector<Word> out = {Word(0)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const auto& w : out) {
      for (const Word& g : {Word::a(0), Word::a(0, -1), Word::b(0), Word::b(0, -1)}) {
        next.push_back(multiply(w, g));
      }
    }
    out = std::move(next);
  }
  return out;
}

// gamma(0..r) by pairwise comparison against every earlier representative.
std::vector<std::uint64_t> brute_force_ball(const PrimeSequence& seq, std::size_t r) {
  std::vector<Word> reps;
  std::vector<std::uint64_t> sizes;
  for (std::size_t n = 0; n <= r; ++n) {
    for (const auto& w : all_words(n)) {
      bool fresh = true;
      for (const auto& u : reps) {
        const TriState eq = decide_equal(w, u, kDefaultBudget, seq);
        EXPECT_FALSE(eq.is_unknown());
        if (eq.is_trivial()) {
          fresh = false;
          break;
        }
      }
      if (fresh) reps.push_back(w);
    }
    sizes.push_back(reps.size());
  }
  return sizes;
}

TEST(BallSizesTest, FirstRadii) {
  const BallCensus c = ball_sizes(seq_7_11_13(), 1, kDefaultBudget);
  EXPECT_EQ(c.sizes, (std::vector<std::uint64_t>{1, 5}));
  EXPECT_EQ(c.unresolved, 0u);
}

TEST(BallSizesTest, MatchesBruteForceToRadiusThree) {
  const auto& seq = seq_7_11_13();
  const BallCensus c = ball_sizes(seq, 3, kDefaultBudget);
  EXPECT_EQ(c.sizes, brute_force_ball(seq, 3));
  EXPECT_EQ(c.unresolved, 0u);
}

TEST(BallSizesTest, BoundedAndIncreasing) {
  const BallCensus c = ball_sizes(seq_7_11_13(), 5, kDefaultBudget);
  std::uint64_t pow3 = 1;
  for (std::size_t n = 0; n < c.sizes.size(); ++n) {
    EXPECT_LE(c.sizes[n], 2 * pow3 - 1);
    if (n > 0) EXPECT_GT(c.sizes[n], c.sizes[n - 1]);
    pow3 *= 3;
  }
}

TEST(BallSizesTest, ThreadCountDoesNotChangeResult) {
  const auto& seq = seq_7_11_13();
  EXPECT_EQ(ball_sizes(seq, 4, kDefaultBudget, 1).sizes, ball_sizes(seq, 4, kDefaultBudget, 3).sizes);
}

TEST(BallSizesTest, RadiusCap) {
  EXPECT_THROW(ball_sizes(seq_7_11_13(), kMaxBallRadius + 1, kDefaultBudget), DomainError);
}

TEST(BallSizesTest, Csv) {
  BallCensus c;
  c.sizes = {1, 5};
  EXPECT_EQ(census_csv(c), "n,gamma\n0,1\n1,5\n");
}

TEST(ElementTableTest, EqualElementsShareSignatures) {
  const auto& seq = seq_7_11_13();
  const Word u = parse_word("[b(1),b(3)]*a", 0, seq);
  const Word v = parse_word("a", 0, seq);
  EXPECT_EQ(element_signature(u, 4, seq), element_signature(v, 4, seq));
  ElementTable table(seq, kDefaultBudget);
  EXPECT_TRUE(table.insert(v));
  EXPECT_FALSE(table.insert(u));
  EXPECT_TRUE(table.insert(parse_word("b", 0, seq)));
  EXPECT_EQ(table.size(), 2u);
}

TEST(CompositionWordsTest, Counts) {
  EXPECT_EQ(composition_words(7, 0).size(), 1716u);
  EXPECT_EQ(BigInt(composition_words(7, 0).size()), binomial(13, 6));
  EXPECT_EQ(composition_words(3, 0).size(), 10u);
}

TEST(CompositionWordsTest, ShapeAndLength) {
  for (const auto& w : composition_words(7, 0)) {
    // Zero a-exponents merge neighbouring b letters, so count with multiplicity.
    BigInt letters = 0, bs = 0;
    for (const auto& x : w.letters()) {
      EXPECT_GT(x.exponent, 0);
      letters += x.exponent;
      if (x.symbol == Generator::kB) bs += x.exponent;
    }
    EXPECT_EQ(bs, 6);
    EXPECT_EQ(letters, 13);
  }
}

TEST(LowerBoundValueTest, Examples) {
  EXPECT_EQ(lower_bound_value(7), 941);
  EXPECT_EQ(lower_bound_value(5), 32);
  EXPECT_THROW(lower_bound_value(3), DomainError);
}

TEST(LowerBoundValueTest, MatchesFloatingPointAwayFromIntegers) {
  BigInt prev = 0;
  for (std::uint64_t l = 5; l <= 31; ++l) {
    const BigInt v = lower_bound_value(l);
    EXPECT_GT(v, prev);
    prev = v;
    const long double x = std::pow(2.0L, l - 1) * std::pow(static_cast<long double>(l - 1),
                                                          static_cast<long double>(l) / 2 - 2);
    if (l <= 13) EXPECT_EQ(v, BigInt(static_cast<long long>(std::ceil(x - 1e-9L)))) << l;
  }
}

TEST(CheckWordsLengthPropTest, LevelZeroSeven) {
  const CompositionReport r = check_words_length_prop(seq_7_11_13(), 0, kDefaultBudget);
  EXPECT_EQ(r.candidates, 1716u);
  EXPECT_EQ(r.unresolved, 0u);
  EXPECT_GE(r.distinct, 941u);
  EXPECT_LE(r.distinct, 1716u);
  EXPECT_EQ(r.status, CheckStatus::kPass);
  EXPECT_EQ(r.margin, BigInt(r.distinct) - 941);
}

TEST(CheckWordsLengthPropTest, FiveBand) {
  const auto seq = seq_of({5, 7, 11}, true);
  const CompositionReport r = check_words_length_prop(seq, 0, kDefaultBudget);
  EXPECT_EQ(r.candidates, 126u);
  EXPECT_GE(r.distinct, 32u);
  EXPECT_EQ(r.status, CheckStatus::kPass);
}

TEST(CheckWordsLengthPropTest, SmallValencyRejected) {
  EXPECT_THROW(check_words_length_prop(seq_of({3, 7}), 0, kDefaultBudget), DomainError);
}

TEST(AbelianWitnessTest, Ranks) {
  for (std::size_t r : {1u, 2u, 7u}) {
    const AbelianCertificate c = abelian_witness(seq_of({7, 11}), r, kDefaultBudget);
    EXPECT_EQ(c.words.size(), r);
    EXPECT_EQ(c.commuting.size(), r * (r - 1) / 2);
    for (const auto& cc : c.commuting) EXPECT_EQ(cc.verdict, Verdict::kTrivial);
    ASSERT_EQ(c.images.size(), r);
    for (const auto& img : c.images) EXPECT_FALSE(img.is_zero());
    EXPECT_EQ(c.status, CheckStatus::kPass);
  }
}

TEST(AbelianWitnessTest, ImagesAreIndependent) {
  // b(i)^{11} has ab_B image 11 e_i, so the images are a basis of 11 Z^7.
  const AbelianCertificate c = abelian_witness(seq_of({7, 11}), 7, kDefaultBudget);
  for (std::size_t i = 0; i < 7; ++i) {
    std::vector<BigInt> expected(7, 0);
    expected[i] = 11;
    EXPECT_EQ(c.images[i].dense(), expected);
  }
}

TEST(AbelianWitnessTest, RankAboveValencyRejected) {
  EXPECT_THROW(abelian_witness(seq_of({7, 11}), 8, kDefaultBudget), DomainError);
}

}  // namespace
}  // namespace branchcalc
