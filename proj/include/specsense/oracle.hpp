// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "specsense/types.hpp"

namespace specsense {

struct OracleResult {
  FusionDesign design;
  double objective = 0;         // exact throughput of the best feasible point
  bool found_feasible = false;
  long long points_evaluated = 0;
};

/// Exhaustive grid search over the lemma-valid region (thresholds between
/// the H0 and H1 fused means), judging feasibility with the exact metrics.
/// Only intended for desk-scale instances: throws std::invalid_argument when
/// K(N+1) > 4. Under the cap conditions the caps alpha, beta <= 1/2 confine
/// every feasible design to this region, so nothing is lost by the
/// restriction.
OracleResult oracle_grid_search(const SensingScenario& s, const PolicyConstraints& p,
                                int resolution);

}  // namespace specsense
