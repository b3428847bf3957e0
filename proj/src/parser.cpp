#include <cctype>

#include "branchcalc/errors.hpp"
#include "branchcalc/sequence.hpp"
#include "branchcalc/word.hpp"

namespace branchcalc {
namespace {

class WordParser {
 public:
  WordParser(std::string_view text, std::size_t level, const PrimeSequence& seq)
      : text_(text), level_(level), seq_(seq) {}

  Word parse() {
    Word w = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::string near = pos_ < text_.size() ? " near '" + std::string(1, text_[pos_]) + "'" : " at end";
    throw ParseError("syntax error: " + what + near, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool at_integer() {
    skip_space();
    std::size_t p = pos_;
    if (p < text_.size() && (text_[p] == '-' || text_[p] == '+')) ++p;
    return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
  }

  BigInt integer() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer");
    return parse_decimal(text_.substr(start, pos_ - start));
  }

  Word expression() {
    Word w = term();
    while (accept('*')) w.append(term());
    return w;
  }

  Word term() {
    Word base = factor();
    while (accept('^')) {
      skip_space();
      if (accept('(')) {
        // "^(k)" with an integer k is a power; any other "^(w)" conjugates.
        const std::size_t save = pos_;
        if (at_integer()) {
          BigInt k = integer();
          if (accept(')')) {
            base = base.power(k);
            continue;
          }
          pos_ = save;
        }
        Word by = expression();
        expect(')');
        base = conjugate(base, by);
      } else if (at_integer()) {
        base = base.power(integer());
      } else {
        fail("expected exponent or '(' after '^'");
      }
    }
    return base;
  }

  Word factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a word");
    const char c = text_[pos_];
    if (c == 'a') {
      ++pos_;
      return Word::a(level_);
    }
    if (c == 'b') {
      ++pos_;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        const std::size_t index_pos = pos_ + 1;
        ++pos_;
        BigInt i = integer();
        expect(')');
        const BigInt& l = seq_.valency(level_);
        if (i < 1 || i > l) {
          throw RangeError("b(" + to_decimal(i) + ") at position " + std::to_string(index_pos) +
                           ": index outside [1, " + to_decimal(l) + "]");
        }
        return Word::b_conjugate(level_, i);
      }
      return Word::b(level_);
    }
    if (c == '1') {
      ++pos_;
      return Word(level_);
    }
    if (c == '(') {
      ++pos_;
      Word w = expression();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word u = expression();
      expect(',');
      Word v = expression();
      expect(']');
      return commutator(u, v);
    }
    fail("expected 'a', 'b', '1', '(' or '['");
  }

  std::string_view text_;
  std::size_t level_;
  const PrimeSequence& seq_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, std::size_t level, const PrimeSequence& seq) {
  return WordParser(text, level, seq).parse();
}

}  // namespace branchcalc
