#include "branchcalc/json_io.hpp"

#include <sstream>

namespace branchcalc {
namespace {

Json residues(const std::vector<BigInt>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_decimal(v));
  return out;
}

void dot_node(const Portrait& p, const std::string& id, std::ostringstream& out) {
  out << "  \"" << id << "\" [label=\"" << (id.empty() ? "root" : id) << "\\nrootExp "
      << to_decimal(p.root_exp);
  if (p.residual) out << "\\n" << render_word(*p.residual);
  out << "\"];\n";
  for (const auto& [k, c] : p.children) {
    const std::string child = id.empty() ? to_decimal(k) : id + "." + to_decimal(k);
    out << "  \"" << id << "\" -> \"" << child << "\";\n";
    dot_node(c, child, out);
  }
}

}  // namespace

Json to_json(const Portrait& p) {
  Json out;
  out["level"] = p.level;
  out["rootExp"] = to_decimal(p.root_exp);
  if (p.residual) {
    out["residual"] = render_word(*p.residual);
  } else {
    Json children = Json::object();
    for (const auto& [k, c] : p.children) children[to_decimal(k)] = to_json(c);
    out["children"] = std::move(children);
  }
  return out;
}

Json to_json(const TriState& t) {
  Json out;
  out["verdict"] = to_string(t.verdict);
  out["witness"] = t.witness ? Json(t.witness->to_string()) : Json(nullptr);
  out["reason"] = t.reason;
  out["nodesVisited"] = t.nodes_visited;
  return out;
}

Json to_json(const AbelianImage& img) {
  return Json{{"aPart", to_decimal(img.a_part)}, {"bPart", to_decimal(img.b_part)}};
}

Json to_json(const BAbelianImage& img) {
  Json components = Json::object();
  for (const auto& [i, e] : img.components) components[to_decimal(i)] = to_decimal(e);
  return Json{{"rank", to_decimal(img.rank)}, {"components", std::move(components)}};
}

Json to_json(const CanonicalBA& form) {
  Json factors = Json::array();
  for (const auto& f : form.factors) {
    factors.push_back(Json{{"index", to_decimal(f.index)}, {"exponent", to_decimal(f.exponent)}});
  }
  return Json{{"level", form.level}, {"alpha", to_decimal(form.alpha)}, {"factors", factors}};
}

Json to_json(const SpineEstimate& s) {
  return Json{{"count", s.count}, {"representation", to_json(s.representation)}};
}

Json to_json(const IdentityReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"check", c.check}, {"status", to_string(c.status)}, {"details", c.details}});
  }
  return Json{{"allPass", r.all_pass()}, {"checks", checks}};
}

Json to_json(const Decoration& d) {
  return Json{{"vertex", d.vertex.to_string()},
              {"kind", to_string(d.kind)},
              {"exponent", to_decimal(d.exponent)},
              {"section", render_word(d.section)}};
}

Json to_json(const RelationReport& r) {
  Json shifts = Json::array();
  for (const auto& s : r.shifts) {
    shifts.push_back(Json{{"level", s.level},
                          {"vertex", s.vertex.to_string()},
                          {"target", s.target.to_string()},
                          {"N", residues(s.occupied)},
                          {"q", to_decimal(s.q)},
                          {"t", to_decimal(s.t)},
                          {"m", to_decimal(s.m)},
                          {"conjugator", s.conjugator}});
  }
  Json chain = Json::array();
  for (std::size_t i = 0; i < r.chain_spines.size(); ++i) {
    chain.push_back(Json{{"i", i}, {"spines", r.chain_spines[i]}, {"bound", to_decimal(r.chain_bounds[i])}});
  }
  Json remaining = Json::array();
  for (const auto& d : r.remaining) remaining.push_back(to_json(d));
  Json out;
  out["status"] = to_string(r.status);
  out["w"] = r.w.to_string();
  out["k"] = r.k;
  out["rounds"] = r.rounds;
  out["shifts"] = std::move(shifts);
  out["chain"] = std::move(chain);
  out["verification"] = Json{{"depth", r.verification_depth},
                             {"verdict", to_string(r.verification.verdict)},
                             {"stabilizesToDepth", r.stabilizes_to_depth},
                             {"nodesVisited", r.verification.nodes_visited}};
  out["remaining"] = std::move(remaining);
  out["message"] = r.message;
  return out;
}

Json to_json(const BallCensus& c) {
  return Json{{"radius", c.radius}, {"sizes", c.sizes}, {"unresolved", c.unresolved}};
}

Json to_json(const CompositionReport& r) {
  return Json{{"index", r.index},
              {"l", r.l},
              {"candidates", r.candidates},
              {"distinct", r.distinct},
              {"lowerBound", to_decimal(r.lower_bound)},
              {"margin", to_decimal(r.margin)},
              {"unresolved", r.unresolved},
              {"status", to_string(r.status)}};
}

Json to_json(const AbelianCertificate& c) {
  Json words = Json::array();
  for (const auto& w : c.words) words.push_back(render_word(w));
  Json commuting = Json::array();
  for (const auto& p : c.commuting) {
    commuting.push_back(Json{{"i", p.i}, {"j", p.j}, {"verdict", to_string(p.verdict)}});
  }
  Json images = Json::array();
  for (const auto& img : c.images) images.push_back(to_json(img));
  return Json{{"status", to_string(c.status)},
              {"words", words},
              {"commuting", commuting},
              {"images", images}};
}

Json to_json(const HypothesisReport& r) {
  Json out;
  out["index"] = r.index;
  out["satisfied"] = r.satisfied;
  out["evaluable"] = r.evaluable;
  out["lhs"] = r.lhs ? Json(to_decimal(*r.lhs)) : Json(nullptr);
  out["rhs"] = r.rhs ? Json(to_decimal(*r.rhs)) : Json(nullptr);
  out["note"] = r.note;
  return out;
}

Json to_json(const SequenceValidation& v) {
  Json entries = Json::array();
  for (const auto& e : v.entries) {
    entries.push_back(Json{{"index", e.index},
                           {"value", to_decimal(e.value)},
                           {"prime", e.prime},
                           {"atLeastSeven", e.at_least_seven},
                           {"distinct", e.distinct}});
  }
  return Json{{"pass", v.pass}, {"entries", entries}};
}

std::string portrait_dot(const Portrait& p) {
  std::ostringstream out;
  out << "digraph portrait {\n";
  dot_node(p, "", out);
  out << "}\n";
  return out.str();
}

}  // namespace branchcalc
