#include "branchcalc/word.hpp"

#include <cstdlib>

#include "branchcalc/errors.hpp"
#include "branchcalc/sequence.hpp"

namespace branchcalc {
namespace {

void require_same_level(const Word& u, const Word& v, const char* op) {
  if (u.level() != v.level()) {
    throw DomainError(std::string(op) + ": operands on levels " + std::to_string(u.level()) +
                      " and " + std::to_string(v.level()));
  }
}

void render_exponent(std::string& out, const BigInt& e) {
  if (e != 1) {
    out += '^';
    out += to_decimal(e);
  }
}

}  // namespace

Word::Word(std::size_t level, const std::vector<Letter>& letters) : level_(level) {
  for (const auto& letter : letters) append(letter.symbol, letter.exponent);
}

Word Word::a(std::size_t level, const BigInt& exponent) {
  Word w(level);
  w.append(Generator::kA, exponent);
  return w;
}

Word Word::b(std::size_t level, const BigInt& exponent) {
  Word w(level);
  w.append(Generator::kB, exponent);
  return w;
}

Word Word::b_conjugate(std::size_t level, const BigInt& i) {
  Word w(level);
  w.append(Generator::kA, -(i - 1));
  w.append(Generator::kB, 1);
  w.append(Generator::kA, i - 1);
  return w;
}

void Word::append(Generator symbol, const BigInt& exponent) {
  if (exponent == 0) return;
  if (!letters_.empty() && letters_.back().symbol == symbol) {
    letters_.back().exponent += exponent;
    if (letters_.back().exponent == 0) letters_.pop_back();
    return;
  }
  letters_.push_back(Letter{symbol, exponent});
}

void Word::append(const Word& other) {
  for (const auto& letter : other.letters_) append(letter.symbol, letter.exponent);
}

Word Word::inverse() const {
  Word out(level_);
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.letters_.push_back(Letter{it->symbol, -it->exponent});
  }
  return out;
}

Word Word::power(const BigInt& k, std::size_t max_letters) const {
  if (k == 0 || letters_.empty()) return Word(level_);
  if (letters_.size() == 1) return Word(level_, {Letter{letters_[0].symbol, letters_[0].exponent * k}});
  const Word base = k < 0 ? inverse() : *this;
  const BigInt count = abs(k);
  if (count * letters_.size() > max_letters) {
    throw DomainError("power: result would exceed " + std::to_string(max_letters) + " letters");
  }
  Word out(level_);
  for (BigInt i = 0; i < count; ++i) out.append(base);
  return out;
}

Word multiply(const Word& u, const Word& v) {
  require_same_level(u, v, "multiply");
  Word out = u;
  out.append(v);
  return out;
}

Word invert(const Word& w) { return w.inverse(); }

Word conjugate(const Word& x, const Word& y) {
  require_same_level(x, y, "conjugate");
  Word out = y.inverse();
  out.append(x);
  out.append(y);
  return out;
}

Word commutator(const Word& x, const Word& y) {
  require_same_level(x, y, "commutator");
  Word out = x.inverse();
  out.append(y.inverse());
  out.append(x);
  out.append(y);
  return out;
}

ExponentSums exponent_sums(const Word& w) {
  ExponentSums sums;
  for (const auto& letter : w.letters()) {
    (letter.symbol == Generator::kA ? sums.alpha : sums.beta) += letter.exponent;
  }
  return sums;
}

Word random_word(std::mt19937_64& rng, std::size_t level, std::size_t max_length) {
  const std::size_t length = rng() % (max_length + 1);
  Word w(level);
  for (std::size_t i = 0; i < length; ++i) {
    const auto r = rng() % 4;
    w.append(r < 2 ? Generator::kA : Generator::kB, r % 2 == 0 ? 1 : -1);
  }
  return w;
}

std::string render_word(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& letter : w.letters()) {
    if (!out.empty()) out += '*';
    out += letter.symbol == Generator::kA ? 'a' : 'b';
    render_exponent(out, letter.exponent);
  }
  return out;
}

CanonicalBA canonical_ba_form(const Word& w, const PrimeSequence& seq) {
  const BigInt& l = seq.valency(w.level());
  CanonicalBA form;
  form.level = w.level();
  BigInt prefix = 0;
  for (const auto& letter : w.letters()) {
    if (letter.symbol == Generator::kA) {
      prefix = floor_mod(prefix + letter.exponent, l);
      continue;
    }
    BigInt index = child_index(1 - prefix, l);
    if (!form.factors.empty() && form.factors.back().index == index) {
      form.factors.back().exponent += letter.exponent;
      if (form.factors.back().exponent == 0) form.factors.pop_back();
    } else {
      form.factors.push_back(BaFactor{std::move(index), letter.exponent});
    }
  }
  form.alpha = prefix;
  return form;
}

Word reassemble(const CanonicalBA& form) {
  Word out(form.level);
  for (const auto& f : form.factors) {
    out.append(Word::b_conjugate(form.level, f.index).power(f.exponent));
  }
  out.append(Generator::kA, form.alpha);
  return out;
}

FreeWord2 FreeWord2::x(std::int64_t exponent) {
  FreeWord2 w;
  w.append(Symbol::kX, exponent);
  return w;
}

FreeWord2 FreeWord2::y(std::int64_t exponent) {
  FreeWord2 w;
  w.append(Symbol::kY, exponent);
  return w;
}

std::uint64_t FreeWord2::letter_length() const {
  std::uint64_t n = 0;
  for (const auto& s : syllables_) n += static_cast<std::uint64_t>(std::llabs(s.exponent));
  return n;
}

void FreeWord2::append(Symbol symbol, std::int64_t exponent) {
  if (exponent == 0) return;
  if (!syllables_.empty() && syllables_.back().symbol == symbol) {
    syllables_.back().exponent += exponent;
    if (syllables_.back().exponent == 0) syllables_.pop_back();
    return;
  }
  syllables_.push_back(Syllable{symbol, exponent});
}

FreeWord2 FreeWord2::inverse() const {
  FreeWord2 out;
  out.syllables_.reserve(syllables_.size());
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) {
    out.syllables_.push_back(Syllable{it->symbol, -it->exponent});
  }
  return out;
}

FreeWord2 FreeWord2::power(std::int64_t k) const {
  const FreeWord2 base = k < 0 ? inverse() : *this;
  FreeWord2 out;
  for (std::int64_t i = 0; i < std::llabs(k); ++i) out = out * base;
  return out;
}

Word FreeWord2::evaluate(const Word& g1, const Word& g2) const {
  require_same_level(g1, g2, "evaluate");
  Word out(g1.level());
  for (const auto& s : syllables_) {
    out.append((s.symbol == Symbol::kX ? g1 : g2).power(s.exponent));
  }
  return out;
}

std::string FreeWord2::to_string() const {
  if (syllables_.empty()) return "1";
  std::string out;
  for (const auto& s : syllables_) {
    if (!out.empty()) out += '*';
    out += s.symbol == Symbol::kX ? 'x' : 'y';
    if (s.exponent != 1) out += '^' + std::to_string(s.exponent);
  }
  return out;
}

FreeWord2 operator*(const FreeWord2& u, const FreeWord2& v) {
  FreeWord2 out = u;
  for (const auto& s : v.syllables_) out.append(s.symbol, s.exponent);
  return out;
}

FreeWord2 conjugate(const FreeWord2& x, const FreeWord2& y) { return y.inverse() * x * y; }

FreeWord2 commutator(const FreeWord2& x, const FreeWord2& y) {
  return x.inverse() * y.inverse() * x * y;
}

}  // namespace branchcalc
