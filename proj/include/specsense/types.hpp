// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <vector>

namespace specsense {

/// Thrown when a fusion design has an (effectively) zero weight vector.
/// Such designs have a degenerate fused statistic and are rejected rather
/// than regularized.
struct DegenerateDesignError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Physical problem instance for multiband cooperative sensing.
///
/// channel_gains(k, n) is the squared channel magnitude |H_k(n)|^2 between
/// the primary transmitter and radio n on band k.
struct SensingScenario {
  int num_bands = 0;          // K
  int num_radios = 0;         // N
  int samples_per_band = 0;   // M, energy-summation window length
  double noise_variance = 0;  // sigma_v^2
  Eigen::MatrixXd channel_gains;  // K x N

  int bands() const { return num_bands; }
  int radios() const { return num_radios; }
};

/// Regulatory envelope: per-band caps and the aggregate interference budget.
struct PolicyConstraints {
  Eigen::VectorXd miss_caps;           // alpha, each in (0, 1/2]
  Eigen::VectorXd false_alarm_caps;    // beta, each in (0, 1/2]
  Eigen::VectorXd interference_costs;  // c >= 0
  Eigen::VectorXd throughput_rates;    // r >= 0
  double interference_budget = 0;      // epsilon > 0
};

/// Decision variables: per-band combining weights and decision thresholds.
/// Row k of weights is the weight vector w_k (length N, nonnegative,
/// at least one strictly positive entry).
struct FusionDesign {
  Eigen::MatrixXd weights;     // K x N
  Eigen::VectorXd thresholds;  // gamma, length K
};

/// Exact per-band detection probabilities and the two aggregates.
/// pm = 1 - pd holds exactly; throughput = r'(1 - pf); interference = c'pm.
struct DetectionMetrics {
  Eigen::VectorXd pf;
  Eigen::VectorXd pd;
  Eigen::VectorXd pm;
  double throughput = 0;
  double interference = 0;
};

struct Violation {
  std::string field;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Checks every type invariant plus cross-dimension consistency between a
/// scenario and its policy vectors. Pure function; accepted instances can be
/// consumed by all downstream operations without further dimension errors.
ValidationResult validate_scenario(const SensingScenario& scenario,
                                   const PolicyConstraints& policy);

/// Throws std::invalid_argument with the joined violation list if invalid.
void ensure_valid(const SensingScenario& scenario, const PolicyConstraints& policy);

/// Checks FusionDesign invariants against a scenario's dimensions.
ValidationResult validate_design(const SensingScenario& scenario, const FusionDesign& design);

}  // namespace specsense
