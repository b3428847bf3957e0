#pragma once

#include <compare>
#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "branchcalc/bigint.hpp"

namespace branchcalc {

// The valencies l_0, l_1, ... of the rooted tree. Values past the explicit
// prefix are produced by next_prime on demand when auto-extension is on.
// Copies share the extension cache; extension is deterministic, so a
// sequence behaves as an immutable value and may be shared across threads.
class PrimeSequence {
 public:
  enum class Provenance { kExplicit, kAutoExtended };

  // Throws DomainError carrying the validation summary when the values are
  // not pairwise distinct primes >= 7.
  static PrimeSequence validated(std::vector<BigInt> values, bool auto_extend = false);

  // No validation. Intended for test-only valencies such as l = 3 or 5.
  static PrimeSequence unchecked(std::vector<BigInt> values, bool auto_extend = false);

  // l_n; throws SequenceExhausted past the end unless auto-extension is on.
  const BigInt& valency(std::size_t n) const;

  bool has_valency(std::size_t n) const;
  std::size_t explicit_size() const { return state_->explicit_values.size(); }
  std::size_t known_size() const;
  bool auto_extend() const { return state_->auto_extend; }
  Provenance provenance(std::size_t n) const;

  // Explicit values followed by every value extended so far.
  std::vector<BigInt> known_values() const;

 private:
  struct State {
    std::vector<BigInt> explicit_values;
    bool auto_extend = false;
    mutable std::mutex mutex;
    mutable std::deque<BigInt> extended;
  };

  explicit PrimeSequence(std::shared_ptr<State> state) : state_(std::move(state)) {}

  std::shared_ptr<State> state_;
};

// Number of vertices on level n: m_n = l_0 * ... * l_{n-1}, m_0 = 1.
BigInt level_size(const PrimeSequence& seq, std::size_t n);

// A vertex as its 1-based child coordinates from the root; level = size.
class VertexPath {
 public:
  VertexPath() = default;
  explicit VertexPath(std::vector<BigInt> coordinates)
      : coordinates_(std::move(coordinates)) {}

  std::size_t level() const { return coordinates_.size(); }
  const std::vector<BigInt>& coordinates() const { return coordinates_; }
  const BigInt& operator[](std::size_t i) const { return coordinates_[i]; }
  bool is_root() const { return coordinates_.empty(); }

  VertexPath child(const BigInt& index) const;
  VertexPath parent() const;
  VertexPath prefix(std::size_t length) const;

  // Every coordinate k lies in [1, l_k].
  bool is_valid(const PrimeSequence& seq) const;

  // Dot-separated form, "2.1"; the root renders as "".
  std::string to_string() const;
  static VertexPath parse(std::string_view text);

  friend bool operator==(const VertexPath&, const VertexPath&) = default;

 private:
  std::vector<BigInt> coordinates_;
};

// Lexicographic order of two vertices on the same level; throws DomainError
// on a level mismatch.
std::strong_ordering vertex_order(const VertexPath& u, const VertexPath& v);

// Orders by level first, then lexicographically. Used for decoration lists.
bool level_then_lex_less(const VertexPath& u, const VertexPath& v);

// All vertices of level n in lexicographic order. Only for small levels.
std::vector<VertexPath> enumerate_level(const PrimeSequence& seq, std::size_t n);

}  // namespace branchcalc
