#include "branchcalc/growth.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "branchcalc/errors.hpp"

namespace branchcalc {
namespace {

constexpr std::size_t kShallowDepth = 2;
constexpr std::size_t kDeepDepth = 4;

void append_signature(const Word& w, const std::string& path, std::size_t depth,
                      const PrimeSequence& seq, std::string& out) {
  const Word r = reduce(w, seq);
  if (r.empty()) return;
  const BigInt root = root_exponent(r, seq);
  const BigInt beta = exponent_sums(r).beta;
  if (root != 0 || beta != 0) {
    out += path;
    out += ':';
    out += to_decimal(root);
    out += ',';
    out += to_decimal(beta);
    out += ';';
  }
  if (depth == 0 || !seq.has_valency(r.level() + 1)) return;
  for (const auto& [child, section] : sections(r, seq)) {
    append_signature(section, path + "." + to_decimal(child), depth - 1, seq, out);
  }
}

std::vector<ElementTable::Keys> keys_parallel(const ElementTable& table,
                                              const std::vector<Word>& words, unsigned threads) {
  std::vector<ElementTable::Keys> keys(words.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, words.size() / 64 + 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < words.size(); ++i) keys[i] = table.keys_for(words[i]);
    return keys;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < words.size(); i += workers) keys[i] = table.keys_for(words[i]);
    });
  }
  for (auto& th : pool) th.join();
  return keys;
}

void compositions(std::size_t remaining, std::size_t parts, std::vector<std::size_t>& prefix,
                  std::vector<std::vector<std::size_t>>& out) {
  if (parts == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::size_t q = 0; q <= remaining; ++q) {
    prefix.push_back(q);
    compositions(remaining - q, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::string element_signature(const Word& w, std::size_t depth, const PrimeSequence& seq) {
  std::string out;
  append_signature(w, "", depth, seq, out);
  return out;
}

ElementTable::ElementTable(const PrimeSequence& seq, std::uint64_t budget)
    : seq_(seq), budget_(budget) {}

ElementTable::Keys ElementTable::keys_for(const Word& w) const {
  return Keys{element_signature(w, kShallowDepth, seq_), element_signature(w, kDeepDepth, seq_)};
}

bool ElementTable::insert(const Word& w) { return insert(w, keys_for(w)); }

bool ElementTable::insert(const Word& w, const Keys& keys) {
  auto& bucket = buckets_[keys.shallow];
  bool unknown = false;
  for (const std::size_t index : bucket) {
    if (deep_keys_[index] != keys.deep) continue;
    const TriState eq = decide_equal(w, representatives_[index], budget_, seq_);
    if (eq.is_trivial()) return false;
    if (eq.is_unknown()) unknown = true;
  }
  if (unknown) ++unresolved_;
  bucket.push_back(representatives_.size());
  representatives_.push_back(w);
  deep_keys_.push_back(keys.deep);
  return true;
}

BallCensus ball_sizes(const PrimeSequence& seq, std::size_t max_radius, std::uint64_t budget,
                      unsigned threads) {
  if (max_radius > kMaxBallRadius) {
    throw DomainError("ball_sizes: radius " + std::to_string(max_radius) + " exceeds " +
                      std::to_string(kMaxBallRadius));
  }
  const std::vector<Word> letters = {Word::a(0), Word::a(0, -1), Word::b(0), Word::b(0, -1)};
  ElementTable table(seq, budget);
  BallCensus census;
  census.radius = max_radius;
  table.insert(Word(0));
  census.sizes.push_back(table.size());
  std::vector<Word> sphere = {Word(0)};
  for (std::size_t n = 1; n <= max_radius; ++n) {
    std::vector<Word> candidates;
    candidates.reserve(sphere.size() * letters.size());
    for (const auto& w : sphere) {
      for (const auto& g : letters) candidates.push_back(reduce(multiply(w, g), seq));
    }
    const auto keys = keys_parallel(table, candidates, threads);
    std::vector<Word> next;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (table.insert(candidates[i], keys[i])) next.push_back(candidates[i]);
    }
    sphere = std::move(next);
    census.sizes.push_back(table.size());
  }
  census.unresolved = table.unresolved();
  return census;
}

std::string census_csv(const BallCensus& census) {
  std::ostringstream out;
  out << "n,gamma\n";
  for (std::size_t n = 0; n < census.sizes.size(); ++n) out << n << ',' << census.sizes[n] << '\n';
  return out.str();
}

std::vector<Word> composition_words(std::size_t l, std::size_t level) {
  if (l == 0) return {};
  std::vector<std::vector<std::size_t>> qs;
  std::vector<std::size_t> prefix;
  compositions(l, l, prefix, qs);
  std::vector<Word> out;
  out.reserve(qs.size());
  for (const auto& q : qs) {
    Word w(level);
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (j > 0) w.append(Generator::kB, 1);
      w.append(Generator::kA, q[j]);
    }
    out.push_back(std::move(w));
  }
  return out;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigInt out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

BigInt lower_bound_value(std::uint64_t l) {
  if (l < 5) throw DomainError("lower_bound_value: l must be at least 5");
  const BigInt square = ipow(4, l - 1) * ipow(l - 1, l - 4);
  const BigInt root = boost::multiprecision::sqrt(square);
  return root * root == square ? root : root + 1;
}

CompositionReport check_words_length_prop(const PrimeSequence& seq, std::size_t i,
                                          std::uint64_t budget, unsigned threads) {
  const BigInt& lv = seq.valency(i);
  if (lv < 5) throw DomainError("check_words_length_prop: l_i must be at least 5");
  if (lv > kMaxCompositionValency) {
    throw DomainError("check_words_length_prop: l_i = " + to_decimal(lv) +
                      " is too large to enumerate");
  }
  CompositionReport report;
  report.index = i;
  report.l = static_cast<std::uint64_t>(lv);
  report.lower_bound = lower_bound_value(report.l);
  const std::vector<Word> words = composition_words(report.l, i);
  report.candidates = words.size();
  ElementTable table(seq, budget);
  const auto keys = keys_parallel(table, words, threads);
  for (std::size_t k = 0; k < words.size(); ++k) table.insert(words[k], keys[k]);
  report.distinct = table.size();
  report.unresolved = table.unresolved();
  report.margin = BigInt(report.distinct) - report.lower_bound;
  if (report.unresolved > 0) {
    report.status = CheckStatus::kInconclusive;
  } else {
    report.status = report.margin >= 0 ? CheckStatus::kPass : CheckStatus::kFail;
  }
  return report;
}

AbelianCertificate abelian_witness(const PrimeSequence& seq, std::size_t r, std::uint64_t budget) {
  if (r < 1 || BigInt(r) > seq.valency(0)) {
    throw DomainError("abelian_witness: rank must lie in [1, l_0]");
  }
  const BigInt& l1 = seq.valency(1);
  AbelianCertificate cert;
  for (std::size_t i = 1; i <= r; ++i) cert.words.push_back(Word::b_conjugate(0, i).power(l1));
  bool unknown = false;
  bool failed = false;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      const TriState t = decide_trivial(commutator(cert.words[i], cert.words[j]), budget, seq);
      cert.commuting.push_back({i + 1, j + 1, t.verdict});
      unknown |= t.is_unknown();
      failed |= t.is_nontrivial();
    }
  }
  for (const auto& w : cert.words) {
    cert.images.push_back(ab_B(w, seq));
    failed |= cert.images.back().is_zero();
  }
  cert.status = failed ? CheckStatus::kFail : unknown ? CheckStatus::kInconclusive : CheckStatus::kPass;
  return cert;
}

}  // namespace branchcalc
