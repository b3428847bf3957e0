// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "branchcalc/engine.hpp"
#include "branchcalc/group_maps.hpp"
#include "branchcalc/growth.hpp"
#include "branchcalc/primes.hpp"
#include "branchcalc/relation.hpp"
#include "test_support.hpp"

namespace branchcalc {
namespace {

using Clock = std::chrono::steady_clock;
using testing::ActionOracle;
using testing::seq_of;

// Pinned limits.
constexpr double kIdentitySeconds = 10.0;
constexpr double kCompositionSeconds = 300.0;
constexpr double kEasyRelationSeconds = 1.0;
constexpr double kGeneralRelationSeconds = 300.0;
constexpr double kWitnessSeconds = 30.0;
constexpr std::uint64_t kBudget = 100'000;
constexpr std::uint64_t kRelationBudget = 1'000'000;
constexpr std::size_t kRandomWords = 1000;
constexpr std::size_t kMaxWordLength = 12;
constexpr std::size_t kRewrites = 50;
constexpr std::size_t kLevelFourSamples = 500;
constexpr std::uint64_t kSeed = 20240607;

struct Outcome {
  bool pass = true;
  std::ostringstream details;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) details << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const PrimeSequence& seq_7_11_13() { return testing::seq_7_11_13(); }

// Valencies for the integer oracle; covers any witness the engine emits at
// the depths exercised here.
const ActionOracle& deep_oracle() {
  static const ActionOracle oracle({7, 11, 13, 17, 19, 23, 29, 31, 37, 41});
  return oracle;
}

// An equality verdict is confirmed independently: Nontrivial must come with a
// witness the oracle sees moved, Trivial must fix every vertex to level 3.
bool confirm_comparison(const Word& u, const Word& v, const TriState& t, std::string& why) {
  const ActionOracle& oracle = deep_oracle();
  const Word quotient = multiply(u, v.inverse());
  if (t.is_nontrivial()) {
    if (!t.witness || t.witness->level() > 10) {
      why = "nontrivial verdict without a checkable witness for " + render_word(quotient);
      return false;
    }
    const auto x = testing::to_int(*t.witness);
    if (oracle.act(quotient, x) == x) {
      why = "witness " + t.witness->to_string() + " is fixed by " + render_word(quotient);
      return false;
    }
    return true;
  }
  if (t.is_trivial()) {
    if (oracle.moves_any(quotient, 3)) {
      why = "trivial verdict but the oracle sees motion for " + render_word(quotient);
      return false;
    }
    return true;
  }
  why = "unknown verdict: " + t.reason;
  return false;
}

// Distinct elements among `words` by comparison with every kept
// representative, independent of the signature table.
struct BruteForce {
  std::vector<Word> reps;
  std::uint64_t unknown = 0;
  std::string error;

  void add(const Word& w, const PrimeSequence& seq) {
    for (const auto& r : reps) {
      const TriState t = decide_equal(w, r, kBudget, seq);
      std::string why;
      if (!confirm_comparison(w, r, t, why)) {
        if (t.is_unknown()) ++unknown;
        if (error.empty()) error = why;
        if (t.is_unknown()) continue;
      }
      if (t.is_trivial()) return;
    }
    reps.push_back(w);
  }
};

// 1. Identity suite.
Outcome criterion_identities() {
  Outcome o;
  const auto start = Clock::now();
  IdentitySuiteOptions options;
  options.depth = 3;
  options.budget = kBudget;
  const IdentityReport r = run_identity_suite(seq_of({7, 11, 13}), options);
  const double secs = seconds_since(start);
  for (const auto& c : r.checks) {
    o.require(c.status == CheckStatus::kPass, c.check + " " + to_string(c.status) + " (" + c.details + ")");
  }
  o.require(r.checks.size() == 6, "expected six checks");
  o.require(r.checks.size() > 0 && r.checks[0].details == "49 cases", "commutator identities must cover 49 cases");
  o.require(r.checks.size() > 3 && r.checks[3].details == "level 1 orbit 7/7, level 2 orbit 77/77",
            "orbit sizes 7 and 77");
  o.require(secs < kIdentitySeconds, "runtime " + std::to_string(secs) + " s");
  o.details << "checks " << r.checks.size() << ", " << secs << " s";
  return o;
}

// A word equal to the identity in G but not in the free group: a product of
// conjugated relators a^7, [b(1), b(j)] and [b(2), b(j)] for non-adjacent j,
// interleaved with free cancellations h h^-1.
Word rewrite_of_identity(std::mt19937_64& rng) {
  std::vector<Word> relators = {Word::a(0, 7)};
  for (int j = 3; j <= 6; ++j) relators.push_back(commutator(Word::b(0), Word::b_conjugate(0, j)));
  for (int j = 4; j <= 6; ++j) {
    relators.push_back(commutator(Word::b_conjugate(0, 2), Word::b_conjugate(0, j)));
  }
  Word w(0);
  const int pieces = 2 + static_cast<int>(rng() % 4);
  for (int i = 0; i < pieces; ++i) {
    const Word& r = relators[rng() % relators.size()];
    const Word g = random_word(rng, 0, 6);
    const Word h = random_word(rng, 0, 4);
    w = multiply(w, conjugate(r, g));
    w = multiply(w, multiply(h, h.inverse()));
  }
  // Shift by a random conjugator; still the identity.
  const Word c = random_word(rng, 0, 5);
  return conjugate(w, c);
}

// 2. Word-problem consistency.
Outcome criterion_word_problem() {
  Outcome o;
  const auto& seq = seq_7_11_13();
  const ActionOracle oracle({7, 11, 13, 17});
  std::mt19937_64 rng(kSeed);
  std::vector<std::vector<std::int64_t>> sample;
  for (std::size_t depth = 1; depth <= 3; ++depth) {
    for (auto& v : oracle.vertices(0, depth)) sample.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < kLevelFourSamples; ++i) {
    std::vector<std::int64_t> v;
    for (std::size_t n = 0; n < 4; ++n) v.push_back(1 + static_cast<std::int64_t>(rng() % oracle.valency(n)));
    sample.push_back(std::move(v));
  }
  std::size_t counts[3] = {0, 0, 0};
  for (std::size_t i = 0; i < kRandomWords; ++i) {
    const Word w = random_word(rng, 0, kMaxWordLength);
    const TriState t = decide_trivial(w, kBudget, seq);
    ++counts[static_cast<int>(t.verdict)];
    if (!t.is_trivial()) continue;
    for (const auto& v : sample) {
      if (oracle.act(w, v) != v) {
        o.require(false, "trivial verdict for " + render_word(w) + " which moves a vertex");
        break;
      }
    }
  }
  std::size_t rewrite_trivial = 0;
  for (std::size_t i = 0; i < kRewrites; ++i) {
    const Word w = rewrite_of_identity(rng);
    o.require(!oracle.moves_any(w, 3), "rewrite is not the identity: " + render_word(w));
    const TriState t = decide_trivial(w, kBudget, seq);
    o.require(!t.is_nontrivial(), "nontrivial verdict for identity rewrite " + render_word(w));
    if (t.is_trivial()) ++rewrite_trivial;
  }
  o.details << "random words trivial/nontrivial/unknown " << counts[0] << "/" << counts[1] << "/"
            << counts[2] << ", " << sample.size() << " sampled vertices, rewrites trivial "
            << rewrite_trivial << "/" << kRewrites;
  return o;
}

// 3. Growth lower-bound proposition.
Outcome criterion_compositions() {
  Outcome o;
  const auto& seq = seq_7_11_13();
  BruteForce oracle;
  for (const auto& w : composition_words(7, 0)) oracle.add(w, seq);
  o.require(oracle.error.empty(), "oracle: " + oracle.error);

  const auto start = Clock::now();
  const CompositionReport r = check_words_length_prop(seq, 0, kBudget);
  const double secs = seconds_since(start);
  const BigInt bound = lower_bound_value(7);
  o.require(bound == 941, "lower bound " + to_decimal(bound));
  o.require(r.unresolved == 0, "unresolved " + std::to_string(r.unresolved));
  o.require(BigInt(r.distinct) >= bound, "distinct " + std::to_string(r.distinct) + " below 941");
  o.require(r.distinct == oracle.reps.size(),
            "lab " + std::to_string(r.distinct) + " vs oracle " + std::to_string(oracle.reps.size()));
  o.require(r.status == CheckStatus::kPass, "status " + to_string(r.status));
  o.require(secs < kCompositionSeconds, "runtime " + std::to_string(secs) + " s");
  o.details << "candidates " << r.candidates << ", distinct " << r.distinct << " (oracle "
            << oracle.reps.size() << "), bound " << bound << ", " << secs << " s";
  return o;
}

// 4. Ball census.
Outcome criterion_ball_census() {
  Outcome o;
  const auto& seq = seq_7_11_13();
  constexpr std::size_t kRadius = 4;
  BruteForce oracle;
  std::vector<std::uint64_t> expected;
  std::vector<Word> layer = {Word(0)};
  for (std::size_t n = 0; n <= kRadius; ++n) {
    for (const auto& w : layer) oracle.add(w, seq);
    expected.push_back(oracle.reps.size());
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (const Word& g : {Word::a(0), Word::a(0, -1), Word::b(0), Word::b(0, -1)}) {
        next.push_back(multiply(w, g));
      }
    }
    layer = std::move(next);
  }
  o.require(oracle.error.empty(), "oracle: " + oracle.error);
  const BallCensus c = ball_sizes(seq, kRadius, kBudget);
  o.require(c.sizes == expected, "census differs from brute force");
  o.require(c.sizes.size() == kRadius + 1 && c.sizes[0] == 1 && c.sizes[1] == 5, "gamma(0), gamma(1)");
  o.require(c.unresolved == 0, "unresolved " + std::to_string(c.unresolved));
  std::uint64_t pow3 = 1;
  for (std::size_t n = 0; n < c.sizes.size(); ++n, pow3 *= 3) {
    o.require(c.sizes[n] <= 2 * pow3 - 1, "gamma(" + std::to_string(n) + ") above 2*3^n-1");
  }
  o.details << "gamma";
  for (auto s : c.sizes) o.details << " " << s;
  o.details << " (oracle";
  for (auto s : expected) o.details << " " << s;
  o.details << ")";
  return o;
}

// 5. Relation finder, commuting inputs.
Outcome criterion_easy_relations() {
  Outcome o;
  const auto& seq = seq_7_11_13();
  const FreeWord2 xy = commutator(FreeWord2::x(), FreeWord2::y());
  const std::vector<std::pair<Word, Word>> cases = {{Word::a(0), Word::a(0, 3)},
                                                    {Word::b(0), Word::b_conjugate(0, 3)}};
  RelationLimits limits;
  limits.depth = 3;
  for (const auto& [g1, g2] : cases) {
    const auto start = Clock::now();
    const RelationReport r = find_relation(g1, g2, limits, seq);
    const double secs = seconds_since(start);
    const std::string label = "(" + render_word(g1) + ", " + render_word(g2) + ")";
    o.require(r.w == xy, label + " gave " + r.w.to_string());
    o.require(r.verification.is_trivial() && r.verification_depth == 3, label + " verification");
    o.require(!deep_oracle().moves_any(r.w.evaluate(g1, g2), 3), label + " oracle sees motion");
    o.require(secs < kEasyRelationSeconds, label + " runtime " + std::to_string(secs) + " s");
    o.details << label << " -> " << r.w.to_string() << " " << to_string(r.verification.verdict)
              << " " << secs << " s; ";
  }
  return o;
}

// 6. Relation finder, general case.
Outcome criterion_general_relation() {
  Outcome o;
  const BigInt p = next_prime(ipow(175, 21));
  const PrimeSequence seq = PrimeSequence::validated({7, p}, /*auto_extend=*/true);
  RelationLimits limits;
  limits.budget = kRelationBudget;
  limits.max_rounds = 64;
  limits.depth = 3;
  const auto start = Clock::now();
  const RelationReport r = find_relation(Word::a(0), Word::b(0), limits, seq);
  const double secs = seconds_since(start);
  o.require(r.status == RelationStatus::kFound, "status " + to_string(r.status) + ": " + r.message);
  o.require(r.rounds <= 64, "rounds " + std::to_string(r.rounds));
  o.require(!r.w.empty(), "empty word");
  const auto& syl = r.w.syllables();
  for (std::size_t i = 0; i < syl.size(); ++i) {
    o.require(syl[i].exponent != 0 && (i == 0 || syl[i].symbol != syl[i - 1].symbol),
              "word not freely reduced");
  }
  o.require(r.verification.is_trivial() && r.verification_depth == 3, "verification at depth 3");
  const Word image = r.w.evaluate(Word::a(0), Word::b(0));
  o.require(decide_trivial(image, kRelationBudget, seq).is_trivial(), "independent re-check");
  o.require(in_level_stabilizer(image, 3, seq), "image leaves level 3");
  for (std::size_t i = 0; i < r.chain_spines.size(); ++i) {
    o.require(BigInt(r.chain_spines[i]) <= 2 * ipow(5, i), "spine bound at c_" + std::to_string(i));
  }
  o.require(!r.chain_spines.empty(), "no chain recorded");
  o.require(secs < kGeneralRelationSeconds, "runtime " + std::to_string(secs) + " s");
  o.details << "k " << r.k << ", rounds " << r.rounds << ", |w| " << r.w.letter_length()
            << " letters, verification " << to_string(r.verification.verdict) << ", " << secs << " s";
  return o;
}

// 7. Hypothesis validators against direct integer arithmetic.
Outcome criterion_hypotheses() {
  Outcome o;
  const BigInt p = next_prime(ipow(175, 21));
  // (25 l_0)^{3 l_0} with l_0 = 7.
  o.require(p >= ipow(175, 21), "next prime below threshold");
  const auto free = check_free_subgroup_hypothesis(PrimeSequence::validated({7, p}), 1);
  o.require(free.satisfied, "free-subgroup hypothesis not satisfied for (7, p)");
  // (l - 1) >= 2.72^5  <=>  (l - 1) * 25^5 >= 68^5.
  for (long l : {7L, 151L}) {
    const bool exact = BigInt(l - 1) * ipow(25, 5) >= ipow(68, 5);
    const auto r = check_growth_hypothesis(PrimeSequence::validated({l, l == 7 ? 11 : 157}), 0);
    o.require(r.satisfied == exact, "growth hypothesis at " + std::to_string(l));
    o.details << "growth(" << l << ") " << (r.satisfied ? "satisfied" : "not satisfied") << "; ";
  }
  o.require(!check_growth_hypothesis(PrimeSequence::validated({7, 11}), 0).satisfied, "7 must fail");
  o.require(check_growth_hypothesis(PrimeSequence::validated({151, 157}), 0).satisfied, "151 must pass");
  o.details << "free-subgroup(7, p) " << (free.satisfied ? "satisfied" : "not satisfied");
  return o;
}

// 8. Abelian witnesses.
Outcome criterion_abelian_witness() {
  Outcome o;
  const auto seq = seq_of({7, 11});
  const auto start = Clock::now();
  const AbelianCertificate c = abelian_witness(seq, 7, kBudget);
  const double secs = seconds_since(start);
  std::size_t trivial = 0, nonzero = 0;
  for (const auto& cc : c.commuting) trivial += cc.verdict == Verdict::kTrivial;
  for (const auto& img : c.images) nonzero += !img.is_zero();
  o.require(c.commuting.size() == 21 && trivial == 21, std::to_string(trivial) + " of 21 commuting");
  o.require(c.images.size() == 7 && nonzero == 7, std::to_string(nonzero) + " of 7 nonzero images");
  o.require(c.status == CheckStatus::kPass, "status " + to_string(c.status));
  const ActionOracle oracle({7, 11});
  for (std::size_t i = 0; i < c.words.size(); ++i) {
    for (std::size_t j = i + 1; j < c.words.size(); ++j) {
      o.require(!oracle.moves_any(commutator(c.words[i], c.words[j]), 2), "oracle sees a noncommuting pair");
    }
  }
  o.require(secs < kWitnessSeconds, "runtime " + std::to_string(secs) + " s");
  o.details << trivial << " commuting, " << nonzero << " nonzero images, " << secs << " s";
  return o;
}

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(BRANCHCALC_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// 9. Determinism of every subcommand.
Outcome criterion_determinism() {
  Outcome o;
  const std::string fixed = "--seq 7,11,13,17 --depth 3 --budget 100000 --seed 7 ";
  const std::vector<std::string> commands = {
      "eval --dot '[b(1),b(2)]'",
      "act 'b*a*b' 2.1.5",
      "equal '[b(2),b(3)]' '[a,b]^(a^2)'",
      "trivial '[[a,b],b]'",
      "stab --level 2 '[[a,b],[a,b]^(a)]'",
      "abelianize 'a*b*a*b^-1'",
      "abelianize --B 'b(1)*b(2)^-1'",
      "spines 'b*a*b'",
      "relation a 'a^3'",
      "--auto-extend relation a b",
      "growth --radius 3",
      "growth --radius 3 --csv",
      "compositions --check",
      "compositions --index 0",
      "identities",
      "witness --rank 3",
      "primes --next 1000",
      "validate --growth-hypothesis --free-subgroup-hypothesis --index 1",
  };
  for (const auto& cmd : commands) {
    const CliRun first = run_cli(fixed + cmd);
    const CliRun second = run_cli(fixed + cmd);
    o.require(!first.out.empty(), "no output from '" + cmd + "'");
    o.require(first.out == second.out && first.exit_code == second.exit_code,
              "'" + cmd + "' differs between runs");
  }
  const std::string growth = fixed + "growth --radius 4";
  o.require(run_cli(growth + " --threads 1").out == run_cli(growth + " --threads 3").out,
            "growth depends on the thread count");
  o.details << commands.size() << " invocations run twice";
  return o;
}

}  // namespace
}  // namespace branchcalc

int main() {
  using namespace branchcalc;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 identity suite", criterion_identities},
      {"2 word-problem consistency", criterion_word_problem},
      {"3 growth lower-bound proposition", criterion_compositions},
      {"4 ball census", criterion_ball_census},
      {"5 relation finder, commuting inputs", criterion_easy_relations},
      {"6 relation finder, general case", criterion_general_relation},
      {"7 hypothesis validators", criterion_hypotheses},
      {"8 abelian witnesses", criterion_abelian_witness},
      {"9 determinism", criterion_determinism},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.details << "exception: " << e.what();
    }
    all &= o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << name << ": " << o.details.str()
              << std::endl;
  }
  return all ? 0 : 1;
}
