#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "branchcalc/bigint.hpp"

namespace branchcalc {

class PrimeSequence;

enum class Generator : std::uint8_t { kA, kB };

struct Letter {
  Generator symbol = Generator::kA;
  BigInt exponent;

  friend bool operator==(const Letter&, const Letter&) = default;
};

// A word in a_n, b_n at a fixed level n. Letters are kept freely merged:
// no zero exponents and no two adjacent letters with the same symbol.
// Exponents are not reduced modulo l_n here; see reduce() in engine.hpp.
class Word {
 public:
  Word() = default;
  explicit Word(std::size_t level) : level_(level) {}
  Word(std::size_t level, const std::vector<Letter>& letters);

  static Word a(std::size_t level, const BigInt& exponent = 1);
  static Word b(std::size_t level, const BigInt& exponent = 1);
  // b(i) = b^(a^(i-1)) = a^-(i-1) * b * a^(i-1), i is 1-based.
  static Word b_conjugate(std::size_t level, const BigInt& i);

  std::size_t level() const { return level_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  // Appends symbol^exponent, merging with the last letter.
  void append(Generator symbol, const BigInt& exponent);
  void append(const Word& other);

  Word inverse() const;
  // Repeated concatenation; throws DomainError when the result would exceed
  // `max_letters` letters.
  Word power(const BigInt& k, std::size_t max_letters = 4'000'000) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::size_t level_ = 0;
  std::vector<Letter> letters_;
};

// Operand-level algebra; all operands must share a level (DomainError).
Word multiply(const Word& u, const Word& v);
Word invert(const Word& w);
// x^y = y^-1 x y.
Word conjugate(const Word& x, const Word& y);
// [x, y] = x^-1 y^-1 x y.
Word commutator(const Word& x, const Word& y);

// Signed totals of a- and b-exponents.
struct ExponentSums {
  BigInt alpha;
  BigInt beta;
  friend bool operator==(const ExponentSums&, const ExponentSums&) = default;
};
ExponentSums exponent_sums(const Word& w);

// Grammar: atoms a, b, b(i), 1; '*' concatenation; '^k' integer power;
// '^(w)' conjugation w^-1 * base * w; '[u,v]' commutator; parentheses.
// Whitespace is ignored. b(i) requires 1 <= i <= l_level.
Word parse_word(std::string_view text, std::size_t level, const PrimeSequence& seq);

// Length uniform in [0, max_length], letters uniform over a, a^-1, b, b^-1.
// Uses raw engine output only, so a seed reproduces across standard libraries.
Word random_word(std::mt19937_64& rng, std::size_t level, std::size_t max_length);

// "a^2*b^-1"; the empty word renders as "1".
std::string render_word(const Word& w);

// g = prod_j b(i_j)^(e_j) * a^alpha with adjacent indices distinct.
struct BaFactor {
  BigInt index;     // in [1, l_n]
  BigInt exponent;  // nonzero
  friend bool operator==(const BaFactor&, const BaFactor&) = default;
};

struct CanonicalBA {
  std::size_t level = 0;
  BigInt alpha;  // in [0, l_n)
  std::vector<BaFactor> factors;
  friend bool operator==(const CanonicalBA&, const CanonicalBA&) = default;
};

CanonicalBA canonical_ba_form(const Word& w, const PrimeSequence& seq);
Word reassemble(const CanonicalBA& form);

// Reduced word in the abstract letters x, y.
class FreeWord2 {
 public:
  enum class Symbol : std::uint8_t { kX, kY };
  struct Syllable {
    Symbol symbol = Symbol::kX;
    std::int64_t exponent = 0;
    friend bool operator==(const Syllable&, const Syllable&) = default;
  };

  FreeWord2() = default;
  static FreeWord2 x(std::int64_t exponent = 1);
  static FreeWord2 y(std::int64_t exponent = 1);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool empty() const { return syllables_.empty(); }
  std::size_t syllable_length() const { return syllables_.size(); }
  // Total letters counted with multiplicity, sum |e|.
  std::uint64_t letter_length() const;

  void append(Symbol symbol, std::int64_t exponent);
  FreeWord2 inverse() const;
  FreeWord2 power(std::int64_t k) const;

  // Substitutes x -> g1, y -> g2.
  Word evaluate(const Word& g1, const Word& g2) const;

  std::string to_string() const;

  friend FreeWord2 operator*(const FreeWord2& u, const FreeWord2& v);
  friend bool operator==(const FreeWord2&, const FreeWord2&) = default;

 private:
  std::vector<Syllable> syllables_;
};

FreeWord2 conjugate(const FreeWord2& x, const FreeWord2& y);
FreeWord2 commutator(const FreeWord2& x, const FreeWord2& y);

}  // namespace branchcalc
