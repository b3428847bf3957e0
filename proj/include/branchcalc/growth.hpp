#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "branchcalc/bigint.hpp"
#include "branchcalc/engine.hpp"
#include "branchcalc/group_maps.hpp"
#include "branchcalc/sequence.hpp"
#include "branchcalc/word.hpp"

namespace branchcalc {

// Abelian images of all sections down to `depth` (skipping vertices whose
// section has trivial image), serialized. Equal elements get equal
// signatures, since each section's image in C_l x Z is well defined. Depth
// is clipped to the levels the sequence can host.
std::string element_signature(const Word& w, std::size_t depth, const PrimeSequence& seq);

// Deduplicates elements: signature buckets at depth 2, a depth-4 signature
// to split collisions, and decide_equal to confirm. An Unknown comparison
// keeps the candidate as distinct and is tallied in `unresolved()`.
class ElementTable {
 public:
  ElementTable(const PrimeSequence& seq, std::uint64_t budget);

  struct Keys {
    std::string shallow;
    std::string deep;
  };
  Keys keys_for(const Word& w) const;

  // True when w is new; it is then stored as a representative.
  bool insert(const Word& w);
  bool insert(const Word& w, const Keys& keys);

  std::size_t size() const { return representatives_.size(); }
  std::uint64_t unresolved() const { return unresolved_; }
  const std::vector<Word>& representatives() const { return representatives_; }

 private:
  const PrimeSequence& seq_;
  std::uint64_t budget_;
  std::uint64_t unresolved_ = 0;
  std::vector<Word> representatives_;
  std::vector<std::string> deep_keys_;
  std::unordered_map<std::string, std::vector<std::size_t>> buckets_;
};

inline constexpr std::size_t kMaxBallRadius = 10;

struct BallCensus {
  std::size_t radius = 0;
  std::vector<std::uint64_t> sizes;  // gamma(0..radius)
  std::uint64_t unresolved = 0;
};

// Signatures of each sphere are computed on `threads` workers; insertion
// order is fixed, so the census does not depend on the thread count.
BallCensus ball_sizes(const PrimeSequence& seq, std::size_t max_radius, std::uint64_t budget,
                      unsigned threads = 1);

// CSV lines "n,gamma" with a header.
std::string census_csv(const BallCensus& census);

// a^{q_0} b a^{q_1} b ... b a^{q_{l-1}} over all weak compositions
// (q_0, ..., q_{l-1}) of l, in lexicographic order of the q-vector.
std::vector<Word> composition_words(std::size_t l, std::size_t level);

BigInt binomial(std::uint64_t n, std::uint64_t k);

// ceil(2^{l-1} * (l-1)^{l/2-2}), computed as the integer ceiling of the
// square root of 4^{l-1} (l-1)^{l-4}. Requires l >= 5.
BigInt lower_bound_value(std::uint64_t l);

struct CompositionReport {
  std::size_t index = 0;
  std::uint64_t l = 0;
  std::uint64_t candidates = 0;
  std::uint64_t distinct = 0;
  BigInt lower_bound;
  std::uint64_t unresolved = 0;
  CheckStatus status = CheckStatus::kFail;
  BigInt margin;  // distinct - lower_bound
};

// Largest valency for which the enumeration is attempted.
inline constexpr std::uint64_t kMaxCompositionValency = 13;

CompositionReport check_words_length_prop(const PrimeSequence& seq, std::size_t i,
                                          std::uint64_t budget, unsigned threads = 1);

struct CommutingCheck {
  std::size_t i = 0;
  std::size_t j = 0;
  Verdict verdict = Verdict::kUnknown;
};

struct AbelianCertificate {
  std::vector<Word> words;  // b(1)^{l_1}, ..., b(r)^{l_1}
  std::vector<CommutingCheck> commuting;
  std::vector<BAbelianImage> images;
  CheckStatus status = CheckStatus::kFail;
};

AbelianCertificate abelian_witness(const PrimeSequence& seq, std::size_t r, std::uint64_t budget);

}  // namespace branchcalc
