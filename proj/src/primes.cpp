#include "branchcalc/primes.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "branchcalc/errors.hpp"
#include "branchcalc/sequence.hpp"

namespace branchcalc {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::array<u64, 12> kDeterministicBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

constexpr std::array<unsigned, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                   29, 31, 37, 41, 43, 47, 53, 59, 61,
                                                   67, 71, 73, 79, 83, 89, 97};

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

bool strong_probable_prime_u64(u64 n, u64 a, u64 d, unsigned s) {
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : kDeterministicBases) {
    if (!strong_probable_prime_u64(n, a, d, s)) return false;
  }
  return true;
}

bool strong_probable_prime(const BigInt& n, const BigInt& a, const BigInt& d, unsigned s) {
  const BigInt n_minus_1 = n - 1;
  BigInt x = boost::multiprecision::powm(a, d, n);
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

// Uniform-ish value in [2, n - 2] built from 64-bit chunks.
BigInt random_base(std::mt19937_64& rng, const BigInt& n) {
  const BigInt span = n - 3;
  const auto chunks = boost::multiprecision::msb(n) / 64 + 2;
  BigInt raw = 0;
  for (std::size_t i = 0; i < chunks; ++i) {
    raw <<= 64;
    raw += rng();
  }
  return raw % span + 2;
}

}  // namespace

bool is_probable_prime(const BigInt& n, unsigned rounds) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<u64>::max()) return is_prime_u64(n.convert_to<u64>());
  for (unsigned p : kSmallPrimes) {
    if (n % p == 0) return false;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  if (!strong_probable_prime(n, 2, d, s)) return false;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  for (unsigned round = 1; round < rounds; ++round) {
    if (!strong_probable_prime(n, random_base(rng, n), d, s)) return false;
  }
  return true;
}

BigInt next_prime(const BigInt& n) {
  if (n < 2) return 2;
  BigInt candidate = n + 1;
  if (candidate == 2) return 2;
  if ((candidate & 1) == 0) ++candidate;
  while (!is_probable_prime(candidate)) candidate += 2;
  return candidate;
}

std::string SequenceValidation::summary() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& e : entries) {
    if (e.prime && e.at_least_seven && e.distinct) continue;
    if (!first) out << "; ";
    first = false;
    out << "l_" << e.index << " = " << e.value << ":";
    if (!e.prime) out << " not prime";
    if (!e.at_least_seven) out << " below 7";
    if (!e.distinct) out << " duplicate";
  }
  return out.str();
}

SequenceValidation validate_sequence(std::span<const BigInt> values) {
  SequenceValidation report;
  report.pass = !values.empty();
  for (std::size_t i = 0; i < values.size(); ++i) {
    SequenceEntryCheck entry;
    entry.index = i;
    entry.value = values[i];
    entry.prime = is_probable_prime(values[i]);
    entry.at_least_seven = values[i] >= 7;
    entry.distinct = true;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (j != i && values[j] == values[i]) entry.distinct = false;
    }
    report.pass = report.pass && entry.prime && entry.at_least_seven && entry.distinct;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

HypothesisReport compare_against_e_power(const BigInt& value, const RationalExponent& exponent,
                                         std::uint64_t digit_budget) {
  if (exponent.denominator <= 0 || exponent.numerator < 0) {
    throw DomainError("exponent must be a non-negative rational with positive denominator");
  }
  HypothesisReport report;
  const BigInt g = boost::multiprecision::gcd(exponent.numerator, exponent.denominator);
  const BigInt num = g == 0 ? BigInt(0) : BigInt(exponent.numerator / g);
  const BigInt den = g == 0 ? BigInt(1) : BigInt(exponent.denominator / g);

  const double value_digits = static_cast<double>(decimal_digits(value));
  const double num_d = num.convert_to<double>();
  const double den_d = den.convert_to<double>();
  const double lhs_digits = den_d * value_digits + num_d * std::log10(25.0);
  const double rhs_digits = num_d * std::log10(68.0);
  if (lhs_digits > static_cast<double>(digit_budget) ||
      rhs_digits > static_cast<double>(digit_budget)) {
    report.evaluable = false;
    report.note = "not evaluable: compared powers exceed the digit budget of " +
                  std::to_string(digit_budget) + " decimal digits";
    return report;
  }
  const auto num_u = num.convert_to<std::uint64_t>();
  const auto den_u = den.convert_to<std::uint64_t>();
  BigInt lhs = ipow(value, den_u) * ipow(BigInt(25), num_u);
  BigInt rhs = ipow(BigInt(68), num_u);
  report.satisfied = lhs >= rhs;
  report.note = "value^" + to_decimal(den) + " * 25^" + to_decimal(num) + " vs 68^" +
                to_decimal(num) + " (base 2.72 >= e)";
  report.lhs = std::move(lhs);
  report.rhs = std::move(rhs);
  return report;
}

HypothesisReport check_growth_hypothesis(const PrimeSequence& seq, std::size_t i,
                                         std::uint64_t digit_budget) {
  const BigInt& l = seq.valency(i);
  // X = 5 * (47/5)^i * m_i = 5 * 47^i * m_i / 5^i.
  RationalExponent x;
  x.numerator = 5 * ipow(BigInt(47), i) * level_size(seq, i);
  x.denominator = ipow(BigInt(5), i);
  HypothesisReport report = compare_against_e_power(l - 1, x, digit_budget);
  report.index = i;
  return report;
}

HypothesisReport check_free_subgroup_hypothesis(const PrimeSequence& seq, std::size_t i,
                                                std::uint64_t digit_budget) {
  if (i == 0) throw DomainError("free-subgroup hypothesis is stated for i >= 1");
  const BigInt& l = seq.valency(i);
  const BigInt base = 25 * seq.valency(i - 1);
  const BigInt exponent = 3 * level_size(seq, i);

  HypothesisReport report;
  report.index = i;
  const double digits = exponent.convert_to<double>() * std::log10(base.convert_to<double>());
  if (digits > static_cast<double>(digit_budget)) {
    report.evaluable = false;
    report.note = "not evaluable: (25*l_" + std::to_string(i - 1) + ")^" + to_decimal(exponent) +
                  " exceeds the digit budget of " + std::to_string(digit_budget) +
                  " decimal digits";
    return report;
  }
  BigInt threshold = ipow(base, exponent.convert_to<std::uint64_t>());
  report.satisfied = l >= threshold;
  report.note = "l_" + std::to_string(i) + " vs (" + to_decimal(base) + ")^" + to_decimal(exponent);
  report.lhs = l;
  report.rhs = std::move(threshold);
  return report;
}

BigInt mod_solve(const BigInt& t, const BigInt& q, const BigInt& l) {
  if (floor_mod(t, l) == 0) throw DomainError("mod_solve: non-invertible (t = 0 mod l)");
  if (floor_mod(q, l) == 0) throw DomainError("mod_solve: no shift requested (q = 0 mod l)");
  const BigInt inv = mod_inverse(t, l);
  if (inv == 0) throw DomainError("mod_solve: non-invertible (gcd(t, l) != 1)");
  return floor_mod(floor_mod(q, l) * inv, l);
}

}  // namespace branchcalc
