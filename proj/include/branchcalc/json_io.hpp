#pragma once

#include <string>

#include "json.hpp"

#include "branchcalc/engine.hpp"
#include "branchcalc/group_maps.hpp"
#include "branchcalc/growth.hpp"
#include "branchcalc/primes.hpp"
#include "branchcalc/relation.hpp"

namespace branchcalc {

// Insertion-ordered, so child maps keep ascending numeric key order and the
// output is byte-stable.
using Json = nlohmann::ordered_json;

Json to_json(const Portrait& p);
Json to_json(const TriState& t);
Json to_json(const AbelianImage& img);
Json to_json(const BAbelianImage& img);
Json to_json(const CanonicalBA& form);
Json to_json(const SpineEstimate& s);
Json to_json(const IdentityReport& r);
Json to_json(const Decoration& d);
Json to_json(const RelationReport& r);
Json to_json(const BallCensus& c);
Json to_json(const CompositionReport& r);
Json to_json(const AbelianCertificate& c);
Json to_json(const HypothesisReport& r);
Json to_json(const SequenceValidation& v);

// Graphviz digraph of the portrait; node labels carry the root exponent,
// leaves also their residual word.
std::string portrait_dot(const Portrait& p);

}  // namespace branchcalc
