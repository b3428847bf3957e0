#include "run_config.hpp"

#include <fstream>
#include <sstream>

namespace branchcalc::cli {

PrimeSequence RunConfig::make_sequence() const {
  if (sequence.empty()) throw ConfigError("sequence must not be empty");
  if (default_depth == 0) throw ConfigError("default_depth must be positive");
  if (default_budget == 0) throw ConfigError("default_budget must be positive");
  const SequenceValidation v = validate_sequence(sequence);
  if (!v.pass) throw ConfigError("invalid sequence: " + v.summary());
  return PrimeSequence::validated(sequence, auto_extend);
}

Json RunConfig::manifest() const {
  Json seq = Json::array();
  for (const auto& l : sequence) seq.push_back(to_decimal(l));
  return Json{{"sequence", seq},
              {"autoExtend", auto_extend},
              {"depth", default_depth},
              {"budget", default_budget},
              {"seed", seed}};
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "sequence") {
      if (!value.is_array()) throw ConfigError("sequence must be an array of decimal strings");
      base.sequence.clear();
      for (const auto& entry : value) {
        if (!entry.is_string()) throw ConfigError("sequence entries must be decimal strings");
        try {
          base.sequence.push_back(parse_decimal(entry.get<std::string>()));
        } catch (const ParseError& e) {
          throw ConfigError(std::string("sequence entry: ") + e.what());
        }
      }
    } else if (key == "default_depth") {
      if (!value.is_number_unsigned()) throw ConfigError("default_depth must be a positive integer");
      base.default_depth = value.get<std::size_t>();
    } else if (key == "default_budget") {
      if (!value.is_number_unsigned()) throw ConfigError("default_budget must be a positive integer");
      base.default_budget = value.get<std::uint64_t>();
    } else if (key == "auto_extend") {
      if (!value.is_boolean()) throw ConfigError("auto_extend must be a boolean");
      base.auto_extend = value.get<bool>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
      base.seed = value.get<std::uint64_t>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

std::vector<BigInt> parse_sequence_list(std::string_view text) {
  std::vector<BigInt> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    try {
      out.push_back(parse_decimal(text.substr(start, comma - start)));
    } catch (const ParseError& e) {
      throw ConfigError(std::string("--seq: ") + e.what());
    }
    start = comma + 1;
  }
  return out;
}

}  // namespace branchcalc::cli
