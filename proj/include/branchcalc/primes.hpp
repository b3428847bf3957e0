#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "branchcalc/bigint.hpp"

namespace branchcalc {

class PrimeSequence;

inline constexpr unsigned kDefaultMillerRabinRounds = 40;
inline constexpr std::uint64_t kDefaultDigitBudget = 1'000'000;

// Exact for n < 2^64 (deterministic witness set); above that, Miller-Rabin
// with `rounds` pseudo-random witnesses drawn from a fixed-seed generator, so
// repeated calls agree.
bool is_probable_prime(const BigInt& n, unsigned rounds = kDefaultMillerRabinRounds);

// Smallest probable prime strictly greater than n.
BigInt next_prime(const BigInt& n);

struct SequenceEntryCheck {
  std::size_t index = 0;
  BigInt value;
  bool prime = false;
  bool at_least_seven = false;
  bool distinct = false;
};

struct SequenceValidation {
  std::vector<SequenceEntryCheck> entries;
  bool pass = false;

  // One line per failing entry, empty on pass.
  std::string summary() const;
};

SequenceValidation validate_sequence(std::span<const BigInt> values);

struct HypothesisReport {
  std::size_t index = 0;
  bool satisfied = false;
  // False when the compared powers would exceed the digit budget; lhs and
  // rhs are then absent and `satisfied` is false.
  bool evaluable = true;
  std::optional<BigInt> lhs;
  std::optional<BigInt> rhs;
  std::string note;
};

// Rational exponent numerator / denominator, denominator > 0.
struct RationalExponent {
  BigInt numerator;
  BigInt denominator = 1;
};

// Decides value >= (68/25)^exponent with exact integers by comparing
// value^den * 25^num against 68^num. The base 68/25 = 2.72 bounds e from
// above, so a pass is a sufficient verdict for value >= e^exponent.
HypothesisReport compare_against_e_power(const BigInt& value,
                                         const RationalExponent& exponent,
                                         std::uint64_t digit_budget = kDefaultDigitBudget);

// log(l_i - 1) >= 5 * (47/5)^i * m_i, checked as l_i - 1 >= 2.72^X.
HypothesisReport check_growth_hypothesis(const PrimeSequence& seq, std::size_t i,
                                         std::uint64_t digit_budget = kDefaultDigitBudget);

// l_i >= (25 * l_{i-1})^(3 * m_i), i >= 1.
HypothesisReport check_free_subgroup_hypothesis(
    const PrimeSequence& seq, std::size_t i,
    std::uint64_t digit_budget = kDefaultDigitBudget);

// Unique m in [1, l-1] with m*t = q (mod l). Throws DomainError when t = 0
// ("non-invertible") or q = 0 ("no shift requested") modulo l.
BigInt mod_solve(const BigInt& t, const BigInt& q, const BigInt& l);

}  // namespace branchcalc
