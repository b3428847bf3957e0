#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "branchcalc/bigint.hpp"
#include "branchcalc/errors.hpp"
#include "branchcalc/json_io.hpp"
#include "branchcalc/sequence.hpp"

namespace branchcalc::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::vector<BigInt> sequence = {7, 11, 13, 17, 19, 23, 29, 31};
  std::size_t default_depth = 3;
  std::uint64_t default_budget = 100'000;
  bool auto_extend = false;
  std::uint64_t seed = 1;

  // Throws ConfigError when the sequence fails validation.
  PrimeSequence make_sequence() const;
  Json manifest() const;
};

// JSON object with optional keys sequence (array of decimal strings),
// default_depth, default_budget, auto_extend, seed. Unknown keys and bad
// types are rejected. Missing keys keep the values already in `base`.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

// "7,11,13" -> {7, 11, 13}.
std::vector<BigInt> parse_sequence_list(std::string_view text);

}  // namespace branchcalc::cli
