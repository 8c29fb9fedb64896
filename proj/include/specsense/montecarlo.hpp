// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "specsense/types.hpp"

namespace specsense {

/// Primary-symbol model used under H1. Constant-modulus symbols reproduce
/// the moments assumed by the analytic detector formulas exactly; Gaussian
/// symbols add a gain-squared term to the H1 variance, which makes the
/// difference itself measurable.
enum class SymbolModel {
  kConstantModulus,
  kGaussian,
};

struct SimOptions {
  SymbolModel symbols = SymbolModel::kConstantModulus;
  int threads = 1;  // trials are partitioned into fixed-size chunks with
                    // per-chunk derived seeds; any partition of whole chunks
                    // across workers merges to the single-threaded result
};

/// Draws per-trial summed energies over M samples for one (band, radio)
/// under H0 (signal_present = false) or H1. Deterministic in (inputs, seed):
/// sample streams are keyed by (seed, band, radio, hypothesis, chunk) through
/// a splitmix64 hash feeding one mt19937_64 per chunk; normal deviates come
/// from the Marsaglia polar transform.
std::vector<double> simulate_energies(const SensingScenario& s, int band, int radio,
                                      bool signal_present, int trials, std::uint64_t seed,
                                      const SimOptions& options = {});

struct EmpiricalMetrics {
  DetectionMetrics metrics;   // empirical pf/pd/pm and the aggregates
  Eigen::VectorXd pf_stderr;  // binomial standard errors
  Eigen::VectorXd pd_stderr;
  long trials = 0;
};

/// Fuses simulated per-radio energies with the design's weights and counts
/// threshold exceedances under each hypothesis. Radio streams are
/// independent; the same stream keys as simulate_energies are used, so
/// indicator weights reproduce single-radio counts exactly.
EmpiricalMetrics empirical_rates(const SensingScenario& s, const PolicyConstraints& p,
                                 const FusionDesign& d, int trials, std::uint64_t seed,
                                 const SimOptions& options = {});

namespace detail {
/// Chunk size of the trial partition (exposed for the merge-contract tests).
inline constexpr int kChunkTrials = 8192;
std::uint64_t stream_key(std::uint64_t seed, int band, int radio, bool signal_present,
                         int chunk);
}  // namespace detail

}  // namespace specsense
