#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "branchcalc/bigint.hpp"
#include "branchcalc/sequence.hpp"
#include "branchcalc/word.hpp"

namespace branchcalc {

inline constexpr std::uint64_t kDefaultBudget = 100'000;

// Reduces a-exponents into (-l_n/2, l_n/2] and re-merges; b-exponents stay
// exact since b_n has infinite order.
Word reduce(const Word& w, const PrimeSequence& seq);

// a-exponent sum mod l_n, in [0, l_n). This is the action on level 1.
BigInt root_exponent(const Word& w, const PrimeSequence& seq);

// Child index (1-based) -> section word at level n + 1. Identity sections are
// omitted. Sections are reduced when l_{n+1} is available.
using SectionMap = std::map<BigInt, Word>;

// Single left-to-right scan with running a-prefix p: b^e contributes b^e to
// child 1 - p and a^e to child 2 - p. The composition law
// section_v(uw) = section_v(u) * section_{v^u}(w) holds by construction.
SectionMap sections(const Word& w, const PrimeSequence& seq);

Word section_at(const Word& w, const BigInt& child, const PrimeSequence& seq);
// Iterated section along a vertex path.
Word section_at(const Word& w, const VertexPath& v, const PrimeSequence& seq);

// Image of v under the right action of w (a sends child k to k + 1).
VertexPath act(const Word& w, const VertexPath& v, const PrimeSequence& seq);

// Depth-truncated section tree. Leaves (cut depth reached) carry their
// residual word; interior nodes carry their nonidentity children.
struct Portrait {
  std::size_t level = 0;
  BigInt root_exp;
  std::vector<std::pair<BigInt, Portrait>> children;
  std::optional<Word> residual;

  bool is_leaf() const { return residual.has_value(); }
  const Portrait* child(const BigInt& index) const;
};

Portrait portrait(const Word& w, std::size_t depth, const PrimeSequence& seq);

// Portrait of u * v from the portraits of u and v (same level and depth).
// Leaf residuals are concatenated and reduced.
Portrait compose(const Portrait& p, const Portrait& q, const PrimeSequence& seq);

enum class Verdict { kTrivial, kNontrivial, kUnknown };

std::string to_string(Verdict v);

struct TriState {
  Verdict verdict = Verdict::kUnknown;
  // For kNontrivial: a vertex moved by the element, when one was located.
  std::optional<VertexPath> witness;
  std::string reason;
  std::uint64_t nodes_visited = 0;

  bool is_trivial() const { return verdict == Verdict::kTrivial; }
  bool is_nontrivial() const { return verdict == Verdict::kNontrivial; }
  bool is_unknown() const { return verdict == Verdict::kUnknown; }
};

// Budgeted recursion: empty => trivial; nonzero root exponent or nonzero
// b-exponent sum => nontrivial; otherwise recurse on all nonidentity
// sections. Every visited node costs one unit of budget.
TriState decide_trivial(const Word& w, std::uint64_t budget, const PrimeSequence& seq);

// decide_trivial(u * v^-1). A nontrivial witness x satisfies x^u != x^v.
TriState decide_equal(const Word& u, const Word& v, std::uint64_t budget,
                      const PrimeSequence& seq);

// Exact: every root exponent through relative depth n is zero.
bool in_level_stabilizer(const Word& w, std::size_t n, const PrimeSequence& seq);

// Whether w acts trivially outside the subtree at u (membership in the
// rigid stabilizer of u, up to budget). A nontrivial witness is a moved
// vertex outside that subtree.
TriState rigid_support_witness(const Word& w, const VertexPath& u, std::uint64_t budget,
                               const PrimeSequence& seq);

}  // namespace branchcalc
