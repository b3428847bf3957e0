#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace branchcalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (words, vertices, integers, config values).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  explicit ParseError(const std::string& what)
      : Error(what), position_(std::string::npos) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Value outside its admissible range (b(i) index, vertex coordinate, ...).
class RangeError : public Error {
 public:
  using Error::Error;
};

// Operation called outside its domain (level mismatch, element not in B, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A valency was requested past the end of a non-extending sequence.
class SequenceExhausted : public Error {
 public:
  explicit SequenceExhausted(std::size_t level)
      : Error("prime sequence has no valency for level " +
              std::to_string(level) + " and auto-extension is off"),
        level_(level) {}

  std::size_t level() const { return level_; }

 private:
  std::size_t level_;
};

}  // namespace branchcalc
