#include "branchcalc/group_maps.hpp"

#include <deque>
#include <random>
#include <set>
#include <sstream>

#include "branchcalc/engine.hpp"
#include "branchcalc/errors.hpp"

namespace branchcalc {
namespace {

constexpr std::size_t kMaxGeneratorRank = 100'000;

// Tracks the worst status seen; fail dominates inconclusive dominates pass.
class StatusAccumulator {
 public:
  void note(const TriState& t, Verdict expected, const std::string& label) {
    if (t.verdict == expected) return;
    if (t.is_unknown()) {
      inconclusive(label + ": " + t.reason);
    } else {
      fail(label + ": got " + to_string(t.verdict));
    }
  }
  void fail(const std::string& what) {
    status_ = CheckStatus::kFail;
    if (first_failure_.empty()) first_failure_ = what;
  }
  void inconclusive(const std::string& what) {
    if (status_ == CheckStatus::kPass) status_ = CheckStatus::kInconclusive;
    if (first_unknown_.empty()) first_unknown_ = what;
  }

  CheckResult finish(std::string name, const std::string& summary) const {
    CheckResult r;
    r.check = std::move(name);
    r.status = status_;
    r.details = summary;
    if (status_ == CheckStatus::kFail) r.details += "; first failure: " + first_failure_;
    if (status_ == CheckStatus::kInconclusive) r.details += "; unresolved: " + first_unknown_;
    return r;
  }

 private:
  CheckStatus status_ = CheckStatus::kPass;
  std::string first_failure_;
  std::string first_unknown_;
};

std::size_t small_valency(const PrimeSequence& seq, std::size_t n, std::size_t cap) {
  const BigInt& l = seq.valency(n);
  if (l > cap) {
    throw DomainError("valency l_" + std::to_string(n) + " = " + to_decimal(l) +
                      " is too large to enumerate");
  }
  return static_cast<std::size_t>(l);
}

// Section maps must agree key-for-key, with equal elements at each key.
void expect_sections(StatusAccumulator& acc, const Word& w, const SectionMap& expected,
                     std::uint64_t budget, const PrimeSequence& seq, const std::string& label) {
  const SectionMap actual = sections(w, seq);
  std::set<BigInt> keys;
  for (const auto& [k, s] : actual) keys.insert(k);
  for (const auto& [k, s] : expected) keys.insert(k);
  for (const auto& k : keys) {
    auto a = actual.find(k);
    auto e = expected.find(k);
    const Word lhs = a == actual.end() ? Word(w.level() + 1) : a->second;
    const Word rhs = e == expected.end() ? Word(w.level() + 1) : e->second;
    acc.note(decide_equal(lhs, rhs, budget, seq), Verdict::kTrivial,
             label + " child " + to_decimal(k));
  }
}

CheckResult check_commutator_identities(const PrimeSequence& seq, std::uint64_t budget) {
  const std::size_t l = small_valency(seq, 0, 1'000);
  const Word a1b1 = commutator(Word::a(1), Word::b(1));
  StatusAccumulator acc;
  std::size_t cases = 0;
  for (std::size_t i = 1; i <= l; ++i) {
    for (std::size_t j = 1; j <= l; ++j) {
      const Word c = commutator(Word::b_conjugate(0, i), Word::b_conjugate(0, j));
      SectionMap expected;
      if (j == i % l + 1) {
        expected.emplace(j, a1b1);
      } else if (i == j % l + 1) {
        expected.emplace(i, a1b1.inverse());
      }
      expect_sections(acc, c, expected, budget, seq,
                      "[b(" + std::to_string(i) + "),b(" + std::to_string(j) + ")]");
      ++cases;
    }
  }
  return acc.finish("commutator_identities", std::to_string(cases) + " cases");
}

// b^{m_{n+1}} has the single section b_n^{m_{n+1}} at 1.1...1 on level n.
CheckResult check_power_section_shape(const PrimeSequence& seq, std::size_t depth,
                                      std::uint64_t budget) {
  StatusAccumulator acc;
  std::ostringstream summary;
  for (std::size_t n = 0; n < depth; ++n) {
    const BigInt m = level_size(seq, n + 1);
    const Word w = Word::b(0, m);
    const VertexPath spine(std::vector<BigInt>(n, BigInt(1)));
    const std::string label = "b^" + to_decimal(m) + " on level " + std::to_string(n);
    acc.note(decide_equal(section_at(w, spine, seq), Word::b(n, m), budget, seq),
             Verdict::kTrivial, label + " spine section");
    if (!in_level_stabilizer(w, n, seq)) acc.fail(label + " moves level " + std::to_string(n));
    acc.note(rigid_support_witness(w, spine, budget, seq), Verdict::kTrivial,
             label + " support outside " + spine.to_string());
    summary << (n ? ", " : "") << "b^" << to_decimal(m);
  }
  return acc.finish("power_section_shape", summary.str());
}

CheckResult check_b2_sections(const PrimeSequence& seq, std::uint64_t budget) {
  StatusAccumulator acc;
  SectionMap expected;
  expected.emplace(2, Word::b(1));
  expected.emplace(3, Word::a(1));
  expect_sections(acc, Word::b_conjugate(0, 2), expected, budget, seq, "b(2)");
  return acc.finish("b2_sections", "b(2) = (1, b_1, a_1, 1, ...)");
}

std::size_t orbit_size(const PrimeSequence& seq, const VertexPath& start) {
  const std::vector<Word> gens = {Word::a(0), Word::b(0)};
  std::set<std::vector<BigInt>> seen = {start.coordinates()};
  std::deque<VertexPath> queue = {start};
  while (!queue.empty()) {
    const VertexPath v = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      VertexPath image = act(g, v, seq);
      if (seen.insert(image.coordinates()).second) queue.push_back(std::move(image));
    }
  }
  return seen.size();
}

CheckResult check_orbit_transitivity(const PrimeSequence& seq, std::uint64_t orbit_cap) {
  StatusAccumulator acc;
  std::ostringstream summary;
  for (std::size_t n = 1; n <= 2; ++n) {
    const BigInt expected = level_size(seq, n);
    if (expected > orbit_cap) {
      acc.inconclusive("level " + std::to_string(n) + " has " + to_decimal(expected) +
                       " vertices, above the enumeration cap");
      continue;
    }
    const std::size_t got = orbit_size(seq, VertexPath(std::vector<BigInt>(n, BigInt(1))));
    summary << (n > 1 ? ", " : "") << "level " << n << " orbit " << got << "/"
            << to_decimal(expected);
    if (BigInt(got) != expected) acc.fail("level " + std::to_string(n) + " orbit size " +
                                          std::to_string(got));
  }
  return acc.finish("orbit_transitivity", summary.str());
}

CheckResult check_spine_subadditivity(const PrimeSequence& seq, std::uint64_t seed,
                                      std::size_t pairs) {
  std::mt19937_64 rng(seed);
  StatusAccumulator acc;
  for (std::size_t i = 0; i < pairs; ++i) {
    const Word u = random_word(rng, 0, 10);
    const Word v = random_word(rng, 0, 10);
    const std::size_t su = spine_estimate(u, seq).count;
    const std::size_t sv = spine_estimate(v, seq).count;
    if (spine_estimate(multiply(u, v), seq).count > su + sv) {
      acc.fail("product of " + render_word(u) + " and " + render_word(v));
    }
    if (spine_estimate(conjugate(u, v), seq).count > su + 2 * sv) {
      acc.fail("conjugate of " + render_word(u) + " by " + render_word(v));
    }
  }
  return acc.finish("spine_subadditivity", std::to_string(pairs) + " random pairs");
}

CheckResult check_commuting_pairs(const PrimeSequence& seq, std::uint64_t budget) {
  const std::size_t l = small_valency(seq, 0, 1'000);
  StatusAccumulator acc;
  std::size_t pairs = 0;
  for (std::size_t i = 1; i <= l; ++i) {
    for (std::size_t k = i + 1; k <= l; ++k) {
      const std::size_t d = k - i;
      if (d == 1 || d == l - 1) continue;
      const Word c = commutator(Word::b_conjugate(0, i), Word::b_conjugate(0, k));
      acc.note(decide_trivial(c, budget, seq), Verdict::kTrivial,
               "[b(" + std::to_string(i) + "),b(" + std::to_string(k) + ")]");
      ++pairs;
    }
  }
  return acc.finish("commuting_pairs", std::to_string(pairs) + " pairs");
}

}  // namespace

AbelianImage ab_G(const Word& w, const PrimeSequence& seq) {
  const ExponentSums sums = exponent_sums(w);
  return AbelianImage{floor_mod(sums.alpha, seq.valency(w.level())), sums.beta};
}

std::vector<BigInt> BAbelianImage::dense() const {
  if (rank > kMaxDenseRank) throw DomainError("ab_B: rank " + to_decimal(rank) + " too large for a dense vector");
  std::vector<BigInt> out(static_cast<std::size_t>(rank));
  for (const auto& [i, e] : components) out[static_cast<std::size_t>(i) - 1] = e;
  return out;
}

BAbelianImage ab_B(const Word& w, const PrimeSequence& seq) {
  const CanonicalBA form = canonical_ba_form(w, seq);
  if (form.alpha != 0) {
    throw DomainError("ab_B: element is not in B (a-exponent sum " + to_decimal(form.alpha) +
                      " mod l_" + std::to_string(w.level()) + ")");
  }
  BAbelianImage out;
  out.rank = seq.valency(w.level());
  for (const auto& f : form.factors) {
    BigInt& c = out.components[f.index];
    c += f.exponent;
    if (c == 0) out.components.erase(f.index);
  }
  return out;
}

SpineEstimate spine_estimate(const Word& w, const PrimeSequence& seq) {
  SpineEstimate s;
  s.representation = canonical_ba_form(w, seq);
  s.count = s.representation.factors.size();
  return s;
}

std::vector<Word> n_generators(const PrimeSequence& seq) {
  const std::size_t l = small_valency(seq, 0, kMaxGeneratorRank);
  std::vector<Word> out;
  out.reserve(l);
  for (std::size_t i = 1; i <= l; ++i) {
    out.push_back(multiply(Word::b_conjugate(0, i % l + 1).inverse(), Word::b_conjugate(0, i)));
  }
  return out;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kInconclusive:
      return "inconclusive";
  }
  return "fail";
}

bool IdentityReport::all_pass() const {
  for (const auto& c : checks) {
    if (c.status != CheckStatus::kPass) return false;
  }
  return true;
}

// A check that runs off the end of a finite sequence is unresolved, not failed.
template <typename F>
CheckResult guarded(const std::string& name, F&& run) {
  try {
    return run();
  } catch (const SequenceExhausted& e) {
    return CheckResult{name, CheckStatus::kInconclusive, std::string("unresolved: ") + e.what()};
  }
}

IdentityReport run_identity_suite(const PrimeSequence& seq, const IdentitySuiteOptions& options) {
  IdentityReport report;
  auto& out = report.checks;
  out.push_back(guarded("commutator_identities",
                        [&] { return check_commutator_identities(seq, options.budget); }));
  out.push_back(guarded("power_section_shape", [&] {
    return check_power_section_shape(seq, options.depth, options.budget);
  }));
  out.push_back(guarded("b2_sections", [&] { return check_b2_sections(seq, options.budget); }));
  out.push_back(guarded("orbit_transitivity",
                        [&] { return check_orbit_transitivity(seq, options.orbit_cap); }));
  out.push_back(guarded("spine_subadditivity", [&] {
    return check_spine_subadditivity(seq, options.seed, options.random_pairs);
  }));
  out.push_back(guarded("commuting_pairs", [&] { return check_commuting_pairs(seq, options.budget); }));
  return report;
}

}  // namespace branchcalc
