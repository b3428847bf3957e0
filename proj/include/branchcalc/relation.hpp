#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "branchcalc/bigint.hpp"
#include "branchcalc/engine.hpp"
#include "branchcalc/errors.hpp"
#include "branchcalc/sequence.hpp"
#include "branchcalc/word.hpp"

namespace branchcalc {

// No residue q with (N + q) and N disjoint exists modulo the level prime.
class PrimeTooSmall : public Error {
 public:
  PrimeTooSmall(std::size_t level, const std::string& detail)
      : Error("prime too small at level " + std::to_string(level) + ": " + detail),
        level_(level) {}
  std::size_t level() const { return level_; }

 private:
  std::size_t level_;
};

// The element does not have the shape the elimination step relies on.
class StructuralError : public Error {
 public:
  using Error::Error;
};

struct ChainEntry {
  FreeWord2 symbolic;
  Word concrete;
};

// c_0 = g1, c_1 = [g1, g2], c_i = [c_{i-1}, c_{i-1}^{c_{i-2}}]; k + 1 entries.
struct CommutatorChain {
  std::vector<ChainEntry> entries;
};

CommutatorChain commutator_chain(const Word& g1, const Word& g2, std::size_t k,
                                 const PrimeSequence& seq);

// Smallest k >= 1 with s0 <= 5^k.
std::size_t choose_k(const BigInt& s0);
std::size_t choose_k(const Word& g1, const Word& g2, const PrimeSequence& seq);

enum class DecorationKind { kTrivial, kPureBPower, kRooted, kRecurse };

std::string to_string(DecorationKind k);

struct Decoration {
  VertexPath vertex;
  DecorationKind kind = DecorationKind::kTrivial;
  Word section;
  // Exponent t of b^t for kPureBPower, rotation q for kRooted.
  BigInt exponent;
};

DecorationKind classify_section(const Word& section, const PrimeSequence& seq);

struct DecorationList {
  // Leaves of kind pure_b_power or rooted, ordered by level then vertex.
  std::vector<Decoration> leaves;
  bool incomplete = false;
  std::uint64_t nodes_expanded = 0;
};

// Depth-first expansion of recurse-kind sections. Each expanded node costs
// one unit of budget; running out sets `incomplete`.
DecorationList decorations(const Word& w, std::uint64_t budget, const PrimeSequence& seq);

// Smallest q in [1, l-1] with (N + q) and N disjoint mod l. Throws
// DomainError("no shift available") when none exists, and when |N|^2 < l
// |N| >= 2 also checks q < |N|^2.
BigInt find_shift(const std::vector<BigInt>& residues, const BigInt& l);

struct ShiftRecord {
  std::size_t level = 0;  // level of the parent vertex; its prime is the modulus
  VertexPath vertex;      // the parent vertex
  VertexPath target;
  std::vector<BigInt> occupied;  // N: children of the parent with nontrivial sections
  BigInt q;
  BigInt t;
  BigInt m;
  std::string conjugator;  // symbolic h
  bool both_candidates_valid = false;
};

struct RelationState {
  CommutatorChain chain;
  FreeWord2 symbolic;
  Word concrete;
};

struct RelationLimits {
  std::uint64_t budget = 1'000'000;
  std::size_t max_rounds = 64;
  std::size_t depth = 3;
  std::size_t max_letters = 20'000'000;
};

// Replaces c by [c, c^{h^m}], where h is a chain conjugator fixing the
// target's parent v and rotating its children by t != 0, and m is the
// smallest power for which the shifted support of c at v misses itself.
// The whole subtree at v becomes trivial.
ShiftRecord eliminate(RelationState& state, const Decoration& target,
                      const RelationLimits& limits, const PrimeSequence& seq);

enum class RelationStatus {
  kCommuting,
  kFound,
  kUnverified,
  kRoundsExhausted,
  kIncomplete,
  kPrimeTooSmall,
  kStructuralError,
  kVerificationFailed,
};

std::string to_string(RelationStatus s);

struct RelationReport {
  RelationStatus status = RelationStatus::kStructuralError;
  FreeWord2 w;
  std::size_t k = 0;
  std::size_t rounds = 0;
  std::vector<ShiftRecord> shifts;
  // Spine estimates of c_0 .. c_k and the bound 5^i * s0 for each.
  std::vector<std::size_t> chain_spines;
  std::vector<BigInt> chain_bounds;
  std::size_t verification_depth = 0;
  TriState verification;
  bool stabilizes_to_depth = false;
  std::vector<Decoration> remaining;
  std::string message;

  bool ok() const {
    return status == RelationStatus::kCommuting || status == RelationStatus::kFound;
  }
};

// Never throws for structural reasons; failures are reported in `status`.
RelationReport find_relation(const Word& g1, const Word& g2, const RelationLimits& limits,
                             const PrimeSequence& seq);

}  // namespace branchcalc
