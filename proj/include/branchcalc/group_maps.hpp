#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "branchcalc/bigint.hpp"
#include "branchcalc/sequence.hpp"
#include "branchcalc/word.hpp"

namespace branchcalc {

// Image in G_n^ab = C_{l_n} x Z.
struct AbelianImage {
  BigInt a_part;  // in [0, l_n)
  BigInt b_part;
  friend bool operator==(const AbelianImage&, const AbelianImage&) = default;
};

AbelianImage ab_G(const Word& w, const PrimeSequence& seq);

// Image in B^ab = Z^{l_n}, kept sparse: index in [1, l_n] -> exponent total.
struct BAbelianImage {
  BigInt rank;  // l_n
  std::map<BigInt, BigInt> components;

  bool is_zero() const { return components.empty(); }
  // Full vector; DomainError when rank exceeds kMaxDenseRank.
  std::vector<BigInt> dense() const;

  static constexpr std::size_t kMaxDenseRank = 1'000'000;
};

// Requires w in B = St(1); throws DomainError otherwise.
BAbelianImage ab_B(const Word& w, const PrimeSequence& seq);

// Upper bound for the spine count: number of b-factors in the canonical form.
struct SpineEstimate {
  std::size_t count = 0;
  CanonicalBA representation;
};

SpineEstimate spine_estimate(const Word& w, const PrimeSequence& seq);

// b(2)^-1 b(1), b(3)^-1 b(2), ..., b(1)^-1 b(l_0). Only for l_0 <= 10^5.
std::vector<Word> n_generators(const PrimeSequence& seq);

enum class CheckStatus { kPass, kFail, kInconclusive };

std::string to_string(CheckStatus s);

struct CheckResult {
  std::string check;
  CheckStatus status = CheckStatus::kPass;
  std::string details;
};

struct IdentityReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

struct IdentitySuiteOptions {
  std::size_t depth = 3;
  std::uint64_t budget = 100'000;
  std::uint64_t seed = 1;
  std::size_t random_pairs = 500;
  // Level-2 orbits are enumerated only when l_0 * l_1 stays under this.
  std::uint64_t orbit_cap = 10'000;
};

// Checks, in order: commutator_identities, power_section_shape,
// b2_sections, orbit_transitivity, spine_subadditivity, commuting_pairs.
IdentityReport run_identity_suite(const PrimeSequence& seq, const IdentitySuiteOptions& options);

}  // namespace branchcalc
