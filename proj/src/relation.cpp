#include "branchcalc/relation.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "branchcalc/group_maps.hpp"
#include "branchcalc/primes.hpp"

namespace branchcalc {
namespace {

// Candidate shift residues past this many tries mean the search is hopeless.
constexpr std::uint64_t kMaxShiftTries = 10'000'000;

std::size_t letters(const Word& w) { return w.size(); }

void guard_length(const Word& w, const RelationLimits& limits, const char* what) {
  if (letters(w) > limits.max_letters) {
    throw StructuralError(std::string(what) + " exceeds " + std::to_string(limits.max_letters) +
                          " letters");
  }
}

bool shift_is_disjoint(const std::set<BigInt>& n, const BigInt& q, const BigInt& l) {
  for (const auto& r : n) {
    if (n.count(floor_mod(r + q, l))) return false;
  }
  return true;
}

std::set<BigInt> residue_set(const std::vector<BigInt>& residues, const BigInt& l) {
  std::set<BigInt> out;
  for (const auto& r : residues) out.insert(floor_mod(r, l));
  return out;
}

void collect(const Word& w, const VertexPath& path, std::uint64_t& budget, DecorationList& out,
             const PrimeSequence& seq) {
  if (budget == 0) {
    out.incomplete = true;
    return;
  }
  --budget;
  ++out.nodes_expanded;
  if (!seq.has_valency(w.level() + 1)) {
    out.incomplete = true;
    return;
  }
  for (const auto& [child, section] : sections(w, seq)) {
    const VertexPath v = path.child(child);
    const DecorationKind kind = classify_section(section, seq);
    if (kind == DecorationKind::kTrivial) continue;
    if (kind == DecorationKind::kRecurse) {
      collect(section, v, budget, out, seq);
      continue;
    }
    const CanonicalBA form = canonical_ba_form(section, seq);
    Decoration d;
    d.vertex = v;
    d.kind = kind;
    d.section = section;
    d.exponent = kind == DecorationKind::kRooted ? form.alpha : form.factors.front().exponent;
    out.leaves.push_back(std::move(d));
  }
}

struct Candidate {
  FreeWord2 symbolic;
  Word concrete;
  BigInt t;
  bool valid = false;
};

Candidate inspect_candidate(FreeWord2 symbolic, Word concrete, const VertexPath& v,
                            const PrimeSequence& seq) {
  Candidate c{std::move(symbolic), std::move(concrete), 0, false};
  if (act(c.concrete, v, seq) != v) return c;
  c.t = root_exponent(section_at(c.concrete, v, seq), seq);
  c.valid = c.t != 0;
  return c;
}

}  // namespace

CommutatorChain commutator_chain(const Word& g1, const Word& g2, std::size_t k,
                                 const PrimeSequence& seq) {
  if (k < 1) throw DomainError("commutator_chain: k must be at least 1");
  CommutatorChain chain;
  chain.entries.push_back({FreeWord2::x(), reduce(g1, seq)});
  chain.entries.push_back(
      {commutator(FreeWord2::x(), FreeWord2::y()), reduce(commutator(g1, g2), seq)});
  for (std::size_t i = 2; i <= k; ++i) {
    const ChainEntry& prev = chain.entries[i - 1];
    const ChainEntry& prev2 = chain.entries[i - 2];
    ChainEntry next;
    next.symbolic = commutator(prev.symbolic, conjugate(prev.symbolic, prev2.symbolic));
    next.concrete =
        reduce(commutator(prev.concrete, conjugate(prev.concrete, prev2.concrete)), seq);
    chain.entries.push_back(std::move(next));
  }
  return chain;
}

std::size_t choose_k(const BigInt& s0) {
  std::size_t k = 1;
  BigInt p = 5;
  while (p < s0) {
    p *= 5;
    ++k;
  }
  return k;
}

std::size_t choose_k(const Word& g1, const Word& g2, const PrimeSequence& seq) {
  return choose_k(BigInt(spine_estimate(g1, seq).count + spine_estimate(g2, seq).count));
}

std::string to_string(DecorationKind k) {
  switch (k) {
    case DecorationKind::kTrivial:
      return "trivial";
    case DecorationKind::kPureBPower:
      return "pure_b_power";
    case DecorationKind::kRooted:
      return "rooted";
    case DecorationKind::kRecurse:
      return "recurse";
  }
  return "recurse";
}

DecorationKind classify_section(const Word& section, const PrimeSequence& seq) {
  const Word r = seq.has_valency(section.level()) ? reduce(section, seq) : section;
  if (r.empty()) return DecorationKind::kTrivial;
  const CanonicalBA form = canonical_ba_form(r, seq);
  if (form.alpha != 0) return DecorationKind::kRooted;
  if (form.factors.size() == 1 && form.factors.front().index == 1) {
    return DecorationKind::kPureBPower;
  }
  return DecorationKind::kRecurse;
}

DecorationList decorations(const Word& w, std::uint64_t budget, const PrimeSequence& seq) {
  DecorationList out;
  const Word r = reduce(w, seq);
  if (r.empty()) return out;
  if (root_exponent(r, seq) != 0) {
    Decoration d;
    d.kind = DecorationKind::kRooted;
    d.section = r;
    d.exponent = root_exponent(r, seq);
    out.leaves.push_back(std::move(d));
    return out;
  }
  collect(r, VertexPath(), budget, out, seq);
  std::stable_sort(out.leaves.begin(), out.leaves.end(),
                   [](const Decoration& x, const Decoration& y) {
                     return level_then_lex_less(x.vertex, y.vertex);
                   });
  return out;
}

BigInt find_shift(const std::vector<BigInt>& residues, const BigInt& l) {
  if (residues.empty()) throw DomainError("find_shift: empty residue set");
  const std::set<BigInt> n = residue_set(residues, l);
  std::uint64_t tries = 0;
  for (BigInt q = 1; q < l; ++q) {
    if (++tries > kMaxShiftTries) break;
    if (!shift_is_disjoint(n, q, l)) continue;
    // At most |N|(|N|-1) residues collide, so q <= |N|^2 - |N| + 1; this is
    // below |N|^2 once |N| >= 2.
    const BigInt square = BigInt(n.size()) * n.size();
    if (n.size() >= 2 && square < l && q >= square) {
      throw DomainError("find_shift: q = " + to_decimal(q) + " violates q < |N|^2");
    }
    return q;
  }
  throw DomainError("no shift available modulo " + to_decimal(l));
}

ShiftRecord eliminate(RelationState& state, const Decoration& target,
                      const RelationLimits& limits, const PrimeSequence& seq) {
  if (target.kind == DecorationKind::kTrivial || target.kind == DecorationKind::kRecurse) {
    throw DomainError("eliminate: target must be a pure_b_power or rooted leaf");
  }
  if (target.vertex.is_root()) {
    throw StructuralError("eliminate: element moves level 1, no parent vertex to shift at");
  }
  const auto& chain = state.chain.entries;
  const std::size_t k = chain.size() - 1;
  const VertexPath v = target.vertex.parent();
  const BigInt& l = seq.valency(v.level());

  std::vector<Candidate> candidates;
  candidates.push_back(inspect_candidate(chain[k - 1].symbolic, chain[k - 1].concrete, v, seq));
  if (k >= 2) {
    candidates.push_back(inspect_candidate(
        conjugate(chain[k - 1].symbolic, chain[k - 2].symbolic),
        reduce(conjugate(chain[k - 1].concrete, chain[k - 2].concrete), seq), v, seq));
  }
  const auto chosen = std::find_if(candidates.begin(), candidates.end(),
                                   [](const Candidate& c) { return c.valid; });
  if (chosen == candidates.end()) {
    throw StructuralError("no chain conjugator fixes vertex '" + v.to_string() +
                          "' with a nonzero rotation of its children");
  }

  ShiftRecord record;
  record.level = v.level();
  record.vertex = v;
  record.target = target.vertex;
  record.t = chosen->t;
  record.conjugator = chosen->symbolic.to_string();
  record.both_candidates_valid =
      std::all_of(candidates.begin(), candidates.end(), [](const Candidate& c) { return c.valid; });

  const Word at_v = section_at(state.concrete, v, seq);
  for (const auto& [child, section] : sections(at_v, seq)) record.occupied.push_back(child);
  if (record.occupied.empty()) throw StructuralError("eliminate: no support below the parent");
  const std::set<BigInt> n = residue_set(record.occupied, l);

  // Smallest power m, not smallest q: m*t is a bijection on the nonzero
  // residues, and a small m keeps h^m materializable for huge primes.
  std::uint64_t tries = 0;
  for (BigInt m = 1; m < l; ++m) {
    if (++tries > kMaxShiftTries) break;
    const BigInt q = floor_mod(m * record.t, l);
    if (shift_is_disjoint(n, q, l)) {
      record.m = m;
      record.q = q;
      break;
    }
  }
  if (record.m == 0) {
    throw PrimeTooSmall(v.level(), "support of size " + std::to_string(n.size()) +
                                       " has no disjoint shift modulo " + to_decimal(l));
  }
  if (mod_solve(record.t, record.q, l) != record.m) {
    throw StructuralError("eliminate: modular solve disagrees with the shift search");
  }

  if (record.m > std::numeric_limits<std::int64_t>::max()) {
    throw StructuralError("eliminate: conjugator power does not fit a free-word exponent");
  }
  const auto m64 = static_cast<std::int64_t>(record.m);
  const FreeWord2 h_m = chosen->symbolic.power(m64);
  const Word h_m_concrete = reduce(chosen->concrete.power(record.m, limits.max_letters), seq);
  guard_length(h_m_concrete, limits, "conjugator power");

  state.symbolic = commutator(state.symbolic, conjugate(state.symbolic, h_m));
  state.concrete =
      reduce(commutator(state.concrete, conjugate(state.concrete, h_m_concrete)), seq);
  guard_length(state.concrete, limits, "eliminated element");

  const TriState post =
      decide_trivial(section_at(state.concrete, target.vertex, seq), limits.budget, seq);
  if (post.is_nontrivial()) {
    throw StructuralError("eliminate: section at '" + target.vertex.to_string() +
                          "' survived the shift");
  }
  return record;
}

std::string to_string(RelationStatus s) {
  switch (s) {
    case RelationStatus::kCommuting:
      return "commuting";
    case RelationStatus::kFound:
      return "found";
    case RelationStatus::kUnverified:
      return "unverified";
    case RelationStatus::kRoundsExhausted:
      return "rounds_exhausted";
    case RelationStatus::kIncomplete:
      return "incomplete";
    case RelationStatus::kPrimeTooSmall:
      return "prime_too_small";
    case RelationStatus::kStructuralError:
      return "structural_error";
    case RelationStatus::kVerificationFailed:
      return "verification_failed";
  }
  return "structural_error";
}

RelationReport find_relation(const Word& g1, const Word& g2, const RelationLimits& limits,
                             const PrimeSequence& seq) {
  RelationReport report;
  report.verification_depth = limits.depth;

  auto verify = [&](RelationStatus success) {
    const Word value = report.w.evaluate(g1, g2);
    report.verification = decide_trivial(value, limits.budget, seq);
    report.stabilizes_to_depth = in_level_stabilizer(value, limits.depth, seq);
    if (report.verification.is_nontrivial() || !report.stabilizes_to_depth) {
      report.status = RelationStatus::kVerificationFailed;
      report.message = "substitution does not evaluate to the identity";
    } else if (report.verification.is_unknown()) {
      report.status = RelationStatus::kUnverified;
      report.message = report.verification.reason;
    } else {
      report.status = success;
    }
  };

  try {
    const TriState commuting = decide_trivial(commutator(g1, g2), limits.budget, seq);
    if (commuting.is_trivial()) {
      report.w = commutator(FreeWord2::x(), FreeWord2::y());
      report.k = 1;
      verify(RelationStatus::kCommuting);
      return report;
    }

    const BigInt s0 = spine_estimate(g1, seq).count + spine_estimate(g2, seq).count;
    report.k = choose_k(s0);
    RelationState state;
    state.chain = commutator_chain(g1, g2, report.k, seq);
    for (std::size_t i = 0; i < state.chain.entries.size(); ++i) {
      report.chain_spines.push_back(spine_estimate(state.chain.entries[i].concrete, seq).count);
      report.chain_bounds.push_back(ipow(5, i) * s0);
    }
    state.symbolic = state.chain.entries.back().symbolic;
    state.concrete = state.chain.entries.back().concrete;

    while (true) {
      DecorationList decs = decorations(state.concrete, limits.budget, seq);
      if (decs.leaves.empty() && !decs.incomplete) break;
      if (decs.leaves.empty()) {
        report.w = state.symbolic;
        report.status = RelationStatus::kIncomplete;
        report.message = "decoration search ran out of budget";
        return report;
      }
      if (report.rounds == limits.max_rounds) {
        report.w = state.symbolic;
        report.remaining = std::move(decs.leaves);
        report.status = RelationStatus::kRoundsExhausted;
        report.message = "round limit " + std::to_string(limits.max_rounds) + " reached";
        return report;
      }
      report.shifts.push_back(eliminate(state, decs.leaves.front(), limits, seq));
      ++report.rounds;
    }

    report.w = state.symbolic;
    if (report.w.empty()) {
      report.status = RelationStatus::kStructuralError;
      report.message = "relation word reduced to the empty word";
      return report;
    }
    verify(RelationStatus::kFound);
  } catch (const PrimeTooSmall& e) {
    report.status = RelationStatus::kPrimeTooSmall;
    report.message = e.what();
  } catch (const SequenceExhausted& e) {
    report.status = RelationStatus::kIncomplete;
    report.message = e.what();
  } catch (const StructuralError& e) {
    report.status = RelationStatus::kStructuralError;
    report.message = e.what();
  } catch (const DomainError& e) {
    report.status = RelationStatus::kStructuralError;
    report.message = e.what();
  }
  return report;
}

}  // namespace branchcalc
