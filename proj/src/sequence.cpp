#include "branchcalc/sequence.hpp"

#include <algorithm>

#include "branchcalc/errors.hpp"
#include "branchcalc/primes.hpp"

namespace branchcalc {

PrimeSequence PrimeSequence::validated(std::vector<BigInt> values, bool auto_extend) {
  if (values.empty()) throw DomainError("prime sequence must not be empty");
  const SequenceValidation report = validate_sequence(values);
  if (!report.pass) throw DomainError("invalid prime sequence: " + report.summary());
  return unchecked(std::move(values), auto_extend);
}

PrimeSequence PrimeSequence::unchecked(std::vector<BigInt> values, bool auto_extend) {
  auto state = std::make_shared<State>();
  state->explicit_values = std::move(values);
  state->auto_extend = auto_extend;
  return PrimeSequence(std::move(state));
}

const BigInt& PrimeSequence::valency(std::size_t n) const {
  const auto& explicit_values = state_->explicit_values;
  if (n < explicit_values.size()) return explicit_values[n];
  if (!state_->auto_extend) throw SequenceExhausted(n);

  std::lock_guard lock(state_->mutex);
  auto& extended = state_->extended;
  while (explicit_values.size() + extended.size() <= n) {
    const BigInt& last = extended.empty()
                             ? (explicit_values.empty() ? BigInt(6) : explicit_values.back())
                             : extended.back();
    BigInt candidate = next_prime(last);
    // Keep the sequence pairwise distinct even when the explicit prefix is
    // not sorted.
    while (std::find(explicit_values.begin(), explicit_values.end(), candidate) !=
           explicit_values.end()) {
      candidate = next_prime(candidate);
    }
    extended.push_back(std::move(candidate));
  }
  return extended[n - explicit_values.size()];
}

bool PrimeSequence::has_valency(std::size_t n) const {
  return state_->auto_extend || n < state_->explicit_values.size();
}

std::size_t PrimeSequence::known_size() const {
  std::lock_guard lock(state_->mutex);
  return state_->explicit_values.size() + state_->extended.size();
}

PrimeSequence::Provenance PrimeSequence::provenance(std::size_t n) const {
  return n < state_->explicit_values.size() ? Provenance::kExplicit
                                            : Provenance::kAutoExtended;
}

std::vector<BigInt> PrimeSequence::known_values() const {
  std::lock_guard lock(state_->mutex);
  std::vector<BigInt> out = state_->explicit_values;
  out.insert(out.end(), state_->extended.begin(), state_->extended.end());
  return out;
}

BigInt level_size(const PrimeSequence& seq, std::size_t n) {
  BigInt m = 1;
  for (std::size_t i = 0; i < n; ++i) m *= seq.valency(i);
  return m;
}

VertexPath VertexPath::child(const BigInt& index) const {
  std::vector<BigInt> coords = coordinates_;
  coords.push_back(index);
  return VertexPath(std::move(coords));
}

VertexPath VertexPath::parent() const {
  if (coordinates_.empty()) throw DomainError("the root has no parent");
  return prefix(coordinates_.size() - 1);
}

VertexPath VertexPath::prefix(std::size_t length) const {
  length = std::min(length, coordinates_.size());
  return VertexPath(std::vector<BigInt>(coordinates_.begin(),
                                        coordinates_.begin() + static_cast<std::ptrdiff_t>(length)));
}

bool VertexPath::is_valid(const PrimeSequence& seq) const {
  for (std::size_t k = 0; k < coordinates_.size(); ++k) {
    if (!seq.has_valency(k)) return false;
    if (coordinates_[k] < 1 || coordinates_[k] > seq.valency(k)) return false;
  }
  return true;
}

std::string VertexPath::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coordinates_.size(); ++i) {
    if (i > 0) out += '.';
    out += to_decimal(coordinates_[i]);
  }
  return out;
}

VertexPath VertexPath::parse(std::string_view text) {
  std::vector<BigInt> coords;
  if (text.empty()) return VertexPath();
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = text.find('.', start);
    const std::string_view piece =
        text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    if (piece.empty()) throw ParseError("empty vertex coordinate", start);
    try {
      coords.push_back(parse_decimal(piece));
    } catch (const ParseError& e) {
      throw ParseError("bad vertex coordinate '" + std::string(piece) + "'", start);
    }
    if (coords.back() < 1) throw RangeError("vertex coordinates are 1-based");
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return VertexPath(std::move(coords));
}

std::strong_ordering vertex_order(const VertexPath& u, const VertexPath& v) {
  if (u.level() != v.level()) {
    throw DomainError("vertex_order: vertices lie on different levels");
  }
  for (std::size_t i = 0; i < u.level(); ++i) {
    if (u[i] < v[i]) return std::strong_ordering::less;
    if (u[i] > v[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

bool level_then_lex_less(const VertexPath& u, const VertexPath& v) {
  if (u.level() != v.level()) return u.level() < v.level();
  return vertex_order(u, v) == std::strong_ordering::less;
}

std::vector<VertexPath> enumerate_level(const PrimeSequence& seq, std::size_t n) {
  std::vector<VertexPath> level{VertexPath()};
  for (std::size_t k = 0; k < n; ++k) {
    const BigInt& l = seq.valency(k);
    std::vector<VertexPath> next;
    for (const auto& v : level) {
      for (BigInt i = 1; i <= l; ++i) next.push_back(v.child(i));
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace branchcalc
