// Command-line front end. Every subcommand prints one JSON document
// {"command", "config", "result"} on stdout; errors go to stderr.
//
// Exit codes: 0 success (or trivial/equal), 1 nontrivial/unequal or a failed
// check, 2 unknown or inconclusive, 64 usage, 65 bad input data,
// 70 internal error, 78 invalid configuration.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "branchcalc/engine.hpp"
#include "branchcalc/group_maps.hpp"
#include "branchcalc/growth.hpp"
#include "branchcalc/json_io.hpp"
#include "branchcalc/primes.hpp"
#include "branchcalc/relation.hpp"
#include "run_config.hpp"

namespace {

using namespace branchcalc;
using branchcalc::cli::ConfigError;
using branchcalc::cli::RunConfig;

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;
constexpr int kExitConfig = 78;

constexpr const char* kGrammar =
    "Words: atoms a, b, b(i), 1; '*' product; '^k' power; '^(w)' conjugation "
    "w^-1*base*w; '[u,v]' commutator u^-1*v^-1*u*v; parentheses. Vertices: "
    "dot-separated 1-based indices, e.g. 2.1.";

struct GlobalOptions {
  std::string config_path;
  std::string seq;
  bool auto_extend = false;
  std::optional<std::size_t> depth;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::kTrivial:
      return 0;
    case Verdict::kNontrivial:
      return 1;
    case Verdict::kUnknown:
      return 2;
  }
  return 2;
}

int status_exit(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return 0;
    case CheckStatus::kFail:
      return 1;
    case CheckStatus::kInconclusive:
      return 2;
  }
  return 1;
}

RunConfig resolve_config(const GlobalOptions& g) {
  RunConfig config;
  std::string path = g.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("BRANCHCALC_CONFIG"); env && *env) path = env;
  }
  if (!path.empty()) config = cli::load_config(path, config);
  if (!g.seq.empty()) config.sequence = cli::parse_sequence_list(g.seq);
  if (g.auto_extend) config.auto_extend = true;
  if (g.depth) config.default_depth = *g.depth;
  if (g.budget) config.default_budget = *g.budget;
  if (g.seed) config.seed = *g.seed;
  return config;
}

void emit(const std::string& command, const RunConfig& config, Json result) {
  Json doc;
  doc["command"] = command;
  doc["config"] = config.manifest();
  doc["result"] = std::move(result);
  std::cout << doc.dump(2) << '\n';
}

Json verdict_json(const TriState& t) { return to_json(t); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word problems, relations and growth in a branch group over a prime sequence"};
  app.footer(kGrammar);
  app.require_subcommand(1, 1);

  GlobalOptions g;
  app.add_option("--config", g.config_path, "JSON config file (default: $BRANCHCALC_CONFIG)");
  app.add_option("--seq", g.seq, "Comma-separated valencies l_0,l_1,... (distinct primes >= 7)");
  app.add_flag("--auto-extend", g.auto_extend, "Extend the sequence with next primes on demand");
  app.add_option("--depth", g.depth, "Depth for portraits and verification")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "Node budget for decision procedures")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--threads", g.threads, "Worker threads; never changes results")->check(CLI::PositiveNumber);

  auto word_sub = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };

  std::string w1, w2, vertex_text, next_text;
  bool dot = false, use_b = false, check = false, csv = false;
  bool growth_hyp = false, free_hyp = false;
  std::size_t level = 1, radius = 4, index = 0, max_rounds = 64, rank = 0;
  std::optional<std::size_t> hyp_index;

  auto* eval = word_sub("eval", "Portrait of a word as JSON");
  eval->add_option("word", w1)->required();
  eval->add_flag("--dot", dot, "Also include a Graphviz rendering");

  auto* act_cmd = word_sub("act", "Image of a vertex under a word");
  act_cmd->add_option("word", w1)->required();
  act_cmd->add_option("vertex", vertex_text)->required();

  auto* equal = word_sub("equal", "Decide whether two words are equal (exit 0/1/2)");
  equal->add_option("u", w1)->required();
  equal->add_option("v", w2)->required();

  auto* trivial = word_sub("trivial", "Decide whether a word is trivial (exit 0/1/2)");
  trivial->add_option("word", w1)->required();

  auto* stab = word_sub("stab", "Level stabilizer membership");
  stab->add_option("word", w1)->required();
  stab->add_option("--level", level, "Level n")->check(CLI::NonNegativeNumber);

  auto* abel = word_sub("abelianize", "Image in G^ab, or in B^ab with --B");
  abel->add_option("word", w1)->required();
  abel->add_flag("--B", use_b, "Map into B^ab (word must fix level 1)");

  auto* spines = word_sub("spines", "Spine count estimate and canonical form");
  spines->add_option("word", w1)->required();

  auto* relation = word_sub("relation", "Find a free word w with w(g1, g2) = 1");
  relation->add_option("g1", w1)->required();
  relation->add_option("g2", w2)->required();
  relation->add_option("--max-rounds", max_rounds, "Elimination round limit")->check(CLI::PositiveNumber);

  auto* growth = word_sub("growth", "Cayley ball sizes gamma(0..n)");
  growth->add_option("--radius", radius, "Maximal radius (<= 10)")->check(CLI::Range(0, 10));
  growth->add_flag("--csv", csv, "Print n,gamma CSV instead of JSON");

  auto* comps = word_sub("compositions", "Composition words a^q0 b a^q1 ... b a^q(l-1)");
  comps->add_flag("--check", check, "Count distinct elements against the lower bound");
  comps->add_option("--index", index, "Level i whose valency is used");

  auto* idents = word_sub("identities", "Identity suite; exit nonzero unless all checks pass");

  auto* witness = word_sub("witness", "Commuting b(i)^{l_1} witnesses of rank r");
  witness->add_option("--rank", rank, "Rank r (default l_0)");

  auto* primes = word_sub("primes", "Prime utilities");
  primes->add_option("--next", next_text, "Smallest probable prime above n")->required();

  auto* validate = word_sub("validate", "Validate the sequence and the hypothesis inequalities");
  validate->add_flag("--growth-hypothesis", growth_hyp, "Evaluate the growth hypothesis");
  validate->add_flag("--free-subgroup-hypothesis", free_hyp, "Evaluate the free-subgroup hypothesis");
  validate->add_option("--index", hyp_index, "Single level index (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  RunConfig config;
  PrimeSequence seq = PrimeSequence::unchecked({7});
  try {
    config = resolve_config(g);
    seq = config.make_sequence();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const std::size_t depth = config.default_depth;
  const std::uint64_t budget = config.default_budget;
  auto word = [&](const std::string& text) { return parse_word(text, 0, seq); };

  try {
    if (*eval) {
      const Portrait p = portrait(word(w1), depth, seq);
      Json r{{"word", w1}, {"depth", depth}, {"portrait", to_json(p)}};
      if (dot) r["dot"] = portrait_dot(p);
      emit("eval", config, std::move(r));
      return 0;
    }
    if (*act_cmd) {
      const VertexPath v = VertexPath::parse(vertex_text);
      if (!v.is_valid(seq)) throw RangeError("vertex '" + vertex_text + "' is not on the tree");
      const VertexPath image = act(word(w1), v, seq);
      emit("act", config, Json{{"word", w1}, {"vertex", v.to_string()}, {"image", image.to_string()}});
      return 0;
    }
    if (*equal) {
      const TriState t = decide_equal(word(w1), word(w2), budget, seq);
      Json r{{"u", w1}, {"v", w2}, {"equal", t.is_unknown() ? Json(nullptr) : Json(t.is_trivial())}, {"decision", verdict_json(t)}};
      emit("equal", config, std::move(r));
      return verdict_exit(t.verdict);
    }
    if (*trivial) {
      const TriState t = decide_trivial(word(w1), budget, seq);
      emit("trivial", config, Json{{"word", w1}, {"decision", verdict_json(t)}});
      return verdict_exit(t.verdict);
    }
    if (*stab) {
      const bool in = in_level_stabilizer(word(w1), level, seq);
      emit("stab", config, Json{{"word", w1}, {"level", level}, {"inStabilizer", in}});
      return 0;
    }
    if (*abel) {
      const Word w = word(w1);
      Json r{{"word", w1}};
      if (use_b) {
        r["abB"] = to_json(ab_B(w, seq));
      } else {
        r["abG"] = to_json(ab_G(w, seq));
      }
      emit("abelianize", config, std::move(r));
      return 0;
    }
    if (*spines) {
      const SpineEstimate s = spine_estimate(word(w1), seq);
      emit("spines", config, Json{{"word", w1}, {"estimate", to_json(s)}});
      return 0;
    }
    if (*relation) {
      RelationLimits limits;
      limits.budget = budget;
      limits.depth = depth;
      limits.max_rounds = max_rounds;
      const RelationReport r = find_relation(word(w1), word(w2), limits, seq);
      Json out = to_json(r);
      out["g1"] = w1;
      out["g2"] = w2;
      emit("relation", config, std::move(out));
      return r.ok() ? 0 : r.status == RelationStatus::kUnverified ? 2 : 1;
    }
    if (*growth) {
      const BallCensus c = ball_sizes(seq, radius, budget, g.threads);
      if (csv) {
        std::cout << census_csv(c);
      } else {
        emit("growth", config, to_json(c));
      }
      return c.unresolved == 0 ? 0 : 2;
    }
    if (*comps) {
      if (check) {
        const CompositionReport r = check_words_length_prop(seq, index, budget, g.threads);
        emit("compositions", config, to_json(r));
        return status_exit(r.status);
      }
      const BigInt& l = seq.valency(index);
      if (l > kMaxCompositionValency) throw DomainError("valency too large to enumerate");
      const auto small_l = static_cast<std::size_t>(l);
      const auto words = composition_words(small_l, index);
      Json list = Json::array();
      for (const auto& w : words) list.push_back(render_word(w));
      emit("compositions", config,
           Json{{"index", index}, {"l", small_l}, {"count", words.size()}, {"words", list}});
      return 0;
    }
    if (*idents) {
      IdentitySuiteOptions o;
      o.depth = depth;
      o.budget = budget;
      o.seed = config.seed;
      const IdentityReport r = run_identity_suite(seq, o);
      emit("identities", config, to_json(r));
      CheckStatus worst = CheckStatus::kPass;
      for (const auto& c : r.checks) {
        if (c.status == CheckStatus::kFail) worst = CheckStatus::kFail;
        if (c.status == CheckStatus::kInconclusive && worst == CheckStatus::kPass) {
          worst = CheckStatus::kInconclusive;
        }
      }
      return status_exit(worst);
    }
    if (*witness) {
      const std::size_t r = rank ? rank : static_cast<std::size_t>(std::min<BigInt>(seq.valency(0), 64));
      const AbelianCertificate c = abelian_witness(seq, r, budget);
      emit("witness", config, to_json(c));
      return status_exit(c.status);
    }
    if (*primes) {
      const BigInt n = parse_decimal(next_text);
      emit("primes", config, Json{{"n", to_decimal(n)}, {"nextPrime", to_decimal(next_prime(n))}});
      return 0;
    }
    if (*validate) {
      Json r{{"sequence", to_json(validate_sequence(config.sequence))}};
      const std::size_t first = hyp_index.value_or(0);
      const std::size_t last = hyp_index ? *hyp_index + 1 : config.sequence.size();
      if (growth_hyp) {
        Json list = Json::array();
        for (std::size_t i = first; i < last; ++i) list.push_back(to_json(check_growth_hypothesis(seq, i)));
        r["growthHypothesis"] = std::move(list);
      }
      if (free_hyp) {
        Json list = Json::array();
        for (std::size_t i = std::max<std::size_t>(first, 1); i < last; ++i) {
          list.push_back(to_json(check_free_subgroup_hypothesis(seq, i)));
        }
        r["freeSubgroupHypothesis"] = std::move(list);
      }
      emit("validate", config, std::move(r));
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitData;
  } catch (const RangeError& e) {
    std::cerr << "range error: " << e.what() << '\n';
    return kExitData;
  } catch (const SequenceExhausted& e) {
    std::cerr << "sequence error: " << e.what() << " (try --auto-extend)\n";
    return kExitData;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
