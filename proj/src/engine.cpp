#include "branchcalc/engine.hpp"

#include <algorithm>
#include <deque>
#include <iterator>

#include "branchcalc/errors.hpp"

namespace branchcalc {
namespace {

// Locates a vertex moved by r, given that r fixes level 1 and has nonzero
// b-exponent sum beta. The root exponents of all sections on a level below
// sum to beta mod l of that level, so some section at the first level whose
// valency does not divide beta is rooted. Returns nullopt only when the
// sequence runs out first.
std::optional<VertexPath> locate_moved_vertex(const Word& r, const VertexPath& path,
                                              const PrimeSequence& seq) {
  std::deque<std::pair<Word, VertexPath>> frontier;
  frontier.emplace_back(r, path);
  while (!frontier.empty()) {
    auto [w, p] = std::move(frontier.front());
    frontier.pop_front();
    if (!seq.has_valency(w.level())) return std::nullopt;
    Word reduced = reduce(w, seq);
    if (reduced.empty()) continue;
    if (root_exponent(reduced, seq) != 0) return p.child(1);
    for (auto& [child, section] : sections(reduced, seq)) {
      frontier.emplace_back(std::move(section), p.child(child));
    }
  }
  return std::nullopt;
}

class TrivialityDecider {
 public:
  TrivialityDecider(const PrimeSequence& seq, std::uint64_t budget)
      : seq_(seq), budget_(budget) {}

  TriState visit(const Word& w, const VertexPath& path) {
    TriState out;
    if (budget_ == 0) {
      out.reason = "budget exhausted";
      return out;
    }
    --budget_;
    ++visited_;
    if (!seq_.has_valency(w.level())) {
      out.reason = "sequence exhausted at level " + std::to_string(w.level());
      return out;
    }
    const Word r = reduce(w, seq_);
    if (r.empty()) {
      out.verdict = Verdict::kTrivial;
      return out;
    }
    const BigInt root = root_exponent(r, seq_);
    if (root != 0) {
      out.verdict = Verdict::kNontrivial;
      out.witness = path.child(1);
      out.reason = "root exponent " + to_decimal(root) + " at level " + std::to_string(r.level());
      return out;
    }
    const ExponentSums sums = exponent_sums(r);
    if (sums.beta != 0) {
      out.verdict = Verdict::kNontrivial;
      out.witness = locate_moved_vertex(r, path, seq_);
      out.reason = "b-exponent sum " + to_decimal(sums.beta) + " at level " +
                   std::to_string(r.level());
      return out;
    }
    bool unknown = false;
    for (const auto& [child, section] : sections(r, seq_)) {
      TriState sub = visit(section, path.child(child));
      if (sub.is_nontrivial()) return sub;
      if (sub.is_unknown() && !unknown) {
        unknown = true;
        out.reason = sub.reason;
      }
    }
    out.verdict = unknown ? Verdict::kUnknown : Verdict::kTrivial;
    return out;
  }

  std::uint64_t visited() const { return visited_; }
  std::uint64_t remaining() const { return budget_; }

 private:
  const PrimeSequence& seq_;
  std::uint64_t budget_;
  std::uint64_t visited_ = 0;
};

bool stabilizes_to_depth(const Word& w, std::size_t depth, const PrimeSequence& seq) {
  if (depth == 0) return true;
  const Word r = reduce(w, seq);
  if (r.empty()) return true;
  if (root_exponent(r, seq) != 0) return false;
  if (depth == 1) return true;
  for (const auto& [child, section] : sections(r, seq)) {
    if (!stabilizes_to_depth(section, depth - 1, seq)) return false;
  }
  return true;
}

Portrait identity_portrait(std::size_t level, std::size_t depth) {
  Portrait p;
  p.level = level;
  p.root_exp = 0;
  if (depth == 0) p.residual = Word(level);
  return p;
}

// Depth of the deepest leaf; leaves only occur at the cut depth. A portrait
// with no leaves has only identity sections below the root, so depth 1 is
// as good as any.
std::size_t portrait_depth(const Portrait& p) {
  if (p.is_leaf()) return 0;
  std::size_t depth = 1;
  for (const auto& [k, c] : p.children) depth = std::max(depth, 1 + portrait_depth(c));
  return depth;
}

Portrait compose_to_depth(const Portrait& p, const Portrait& q, std::size_t depth,
                          const PrimeSequence& seq) {
  Portrait out;
  out.level = p.level;
  if (depth == 0) {
    Word w = p.residual.value_or(Word(p.level));
    w.append(q.residual.value_or(Word(q.level)));
    out.residual = reduce(w, seq);
    out.root_exp = root_exponent(*out.residual, seq);
    return out;
  }
  const BigInt& l = seq.valency(p.level);
  out.root_exp = floor_mod(p.root_exp + q.root_exp, l);
  std::map<BigInt, bool> indices;
  for (const auto& [k, child] : p.children) indices[k] = true;
  for (const auto& [k, child] : q.children) indices[child_index(k - p.root_exp, l)] = true;
  for (const auto& [k, unused] : indices) {
    const Portrait id = identity_portrait(p.level + 1, depth - 1);
    const Portrait* left = p.child(k);
    const Portrait* right = q.child(child_index(k + p.root_exp, l));
    Portrait c = compose_to_depth(left ? *left : id, right ? *right : id, depth - 1, seq);
    const bool identity = c.root_exp == 0 && c.children.empty() &&
                          (!c.residual.has_value() || c.residual->empty());
    if (!identity) out.children.emplace_back(k, std::move(c));
  }
  return out;
}

}  // namespace

Word reduce(const Word& w, const PrimeSequence& seq) {
  const BigInt& l = seq.valency(w.level());
  Word out(w.level());
  for (const auto& letter : w.letters()) {
    if (letter.symbol == Generator::kA) {
      out.append(Generator::kA, symmetric_mod(letter.exponent, l));
      // A merge may land on a multiple of l.
      if (!out.empty() && out.letters().back().symbol == Generator::kA) {
        const BigInt& e = out.letters().back().exponent;
        const BigInt fixed = symmetric_mod(e, l);
        if (fixed != e) out.append(Generator::kA, fixed - e);
      }
    } else {
      out.append(Generator::kB, letter.exponent);
    }
  }
  return out;
}

BigInt root_exponent(const Word& w, const PrimeSequence& seq) {
  return floor_mod(exponent_sums(w).alpha, seq.valency(w.level()));
}

SectionMap sections(const Word& w, const PrimeSequence& seq) {
  const BigInt& l = seq.valency(w.level());
  const std::size_t child_level = w.level() + 1;
  SectionMap out;
  BigInt prefix = 0;
  for (const auto& letter : w.letters()) {
    if (letter.symbol == Generator::kA) {
      prefix = floor_mod(prefix + letter.exponent, l);
      continue;
    }
    const BigInt first = child_index(1 - prefix, l);
    const BigInt second = child_index(2 - prefix, l);
    out.try_emplace(first, child_level).first->second.append(Generator::kB, letter.exponent);
    out.try_emplace(second, child_level).first->second.append(Generator::kA, letter.exponent);
  }
  const bool reducible = seq.has_valency(child_level);
  for (auto it = out.begin(); it != out.end();) {
    if (reducible) it->second = reduce(it->second, seq);
    it = it->second.empty() ? out.erase(it) : std::next(it);
  }
  return out;
}

Word section_at(const Word& w, const BigInt& child, const PrimeSequence& seq) {
  const BigInt& l = seq.valency(w.level());
  Word out(w.level() + 1);
  BigInt prefix = 0;
  for (const auto& letter : w.letters()) {
    if (letter.symbol == Generator::kA) {
      prefix = floor_mod(prefix + letter.exponent, l);
      continue;
    }
    if (child_index(1 - prefix, l) == child) out.append(Generator::kB, letter.exponent);
    if (child_index(2 - prefix, l) == child) out.append(Generator::kA, letter.exponent);
  }
  return seq.has_valency(out.level()) ? reduce(out, seq) : out;
}

Word section_at(const Word& w, const VertexPath& v, const PrimeSequence& seq) {
  Word current = w;
  for (const auto& coordinate : v.coordinates()) current = section_at(current, coordinate, seq);
  return current;
}

VertexPath act(const Word& w, const VertexPath& v, const PrimeSequence& seq) {
  std::vector<BigInt> image;
  image.reserve(v.level());
  Word current = w;
  for (std::size_t i = 0; i < v.level(); ++i) {
    const BigInt& l = seq.valency(current.level());
    if (v[i] < 1 || v[i] > l) {
      throw RangeError("vertex coordinate " + to_decimal(v[i]) + " outside [1, " + to_decimal(l) +
                       "]");
    }
    image.push_back(child_index(v[i] + root_exponent(current, seq), l));
    if (i + 1 < v.level()) current = section_at(current, v[i], seq);
  }
  return VertexPath(std::move(image));
}

const Portrait* Portrait::child(const BigInt& index) const {
  for (const auto& [k, c] : children) {
    if (k == index) return &c;
  }
  return nullptr;
}

Portrait portrait(const Word& w, std::size_t depth, const PrimeSequence& seq) {
  Portrait p;
  p.level = w.level();
  const Word r = reduce(w, seq);
  p.root_exp = root_exponent(r, seq);
  if (depth == 0) {
    p.residual = r;
    return p;
  }
  for (const auto& [child, section] : sections(r, seq)) {
    p.children.emplace_back(child, portrait(section, depth - 1, seq));
  }
  return p;
}

Portrait compose(const Portrait& p, const Portrait& q, const PrimeSequence& seq) {
  if (p.level != q.level) throw DomainError("compose: portraits on different levels");
  return compose_to_depth(p, q, std::max(portrait_depth(p), portrait_depth(q)), seq);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kTrivial:
      return "trivial";
    case Verdict::kNontrivial:
      return "nontrivial";
    case Verdict::kUnknown:
      return "unknown";
  }
  return "unknown";
}

TriState decide_trivial(const Word& w, std::uint64_t budget, const PrimeSequence& seq) {
  if (budget == 0) throw DomainError("decide_trivial: budget must be at least 1");
  TrivialityDecider decider(seq, budget);
  TriState result = decider.visit(w, VertexPath());
  result.nodes_visited = decider.visited();
  return result;
}

TriState decide_equal(const Word& u, const Word& v, std::uint64_t budget,
                      const PrimeSequence& seq) {
  return decide_trivial(multiply(u, v.inverse()), budget, seq);
}

bool in_level_stabilizer(const Word& w, std::size_t n, const PrimeSequence& seq) {
  return stabilizes_to_depth(w, n, seq);
}

TriState rigid_support_witness(const Word& w, const VertexPath& u, std::uint64_t budget,
                               const PrimeSequence& seq) {
  if (budget == 0) throw DomainError("rigid_support_witness: budget must be at least 1");
  TriState out;
  bool unknown = false;
  Word node = w;
  VertexPath prefix;
  for (std::size_t k = 0; k < u.level(); ++k) {
    const Word r = reduce(node, seq);
    if (r.empty()) break;
    if (root_exponent(r, seq) != 0) {
      // Every child of the (fixed) prefix moves; pick one off the path.
      out.verdict = Verdict::kNontrivial;
      out.witness = prefix.child(u[k] == 1 ? BigInt(2) : BigInt(1));
      out.reason = "moves the children of vertex '" + prefix.to_string() + "'";
      return out;
    }
    SectionMap s = sections(r, seq);
    for (const auto& [child, section] : s) {
      if (child == u[k]) continue;
      if (budget == 0) {
        unknown = true;
        out.reason = "budget exhausted";
        continue;
      }
      TriState sub = decide_trivial(section, budget, seq);
      budget -= std::min(budget, sub.nodes_visited);
      out.nodes_visited += sub.nodes_visited;
      if (sub.is_nontrivial()) {
        out.verdict = Verdict::kNontrivial;
        if (sub.witness) {
          std::vector<BigInt> coords = prefix.child(child).coordinates();
          for (const auto& c : sub.witness->coordinates()) coords.push_back(c);
          out.witness = VertexPath(std::move(coords));
        }
        out.reason = "nontrivial section at vertex '" + prefix.child(child).to_string() + "'";
        return out;
      }
      if (sub.is_unknown()) {
        unknown = true;
        out.reason = sub.reason;
      }
    }
    auto it = s.find(u[k]);
    node = it == s.end() ? Word(r.level() + 1) : it->second;
    prefix = prefix.child(u[k]);
  }
  out.verdict = unknown ? Verdict::kUnknown : Verdict::kTrivial;
  return out;
}

}  // namespace branchcalc
