// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specsense/types.hpp"

namespace specsense {

/// Inclusive sweep range lo..hi with `steps` evenly spaced points.
struct SweepRange {
  double lo = 0;
  double hi = 0;
  int steps = 0;
  std::vector<double> points() const;
};

struct RunOptions {
  std::optional<double> epsilon;          // single-point solve override
  std::optional<SweepRange> epsilon_range;
  int trials = 100000;
  std::uint64_t seed = 1;
  std::string format = "csv";  // csv | plot
  std::string out;             // output path stem
};

struct LoadedConfig {
  SensingScenario scenario;
  PolicyConstraints policy;
  RunOptions run;
};

struct ConfigError {
  int line = 0;  // 0 when no specific line applies
  std::string message;
};

struct ConfigResult {
  std::optional<LoadedConfig> config;
  std::vector<ConfigError> errors;
  bool ok() const { return config.has_value() && errors.empty(); }
  std::string error_text() const;
};

/// Parses the key-value configuration format (sections, scalar values and
/// bracketed numeric arrays; see the README for the grammar) and validates
/// the instance. All schema and validation failures are reported together
/// with line references.
ConfigResult load_config(const std::string& path);
ConfigResult parse_config(const std::string& text);

}  // namespace specsense
