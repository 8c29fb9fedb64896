// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <vector>

#include "specsense/types.hpp"

namespace specsense {

/// Moments of the fused statistic z_k = w' Y_k under both hypotheses.
struct FusedMoments {
  double mean_h0;  // M sv2 w'1
  double mean_h1;  // M w'(sv2 1 + G_k)
  double var_h0;   // 2 M sv2^2 w'w
  double var_h1;   // 2 M sv2 w'[sv2 I + 2 diag(G_k)] w
};

/// Throws DegenerateDesignError if ||w|| < 1e-12.
FusedMoments fused_moments(const SensingScenario& s, const Eigen::VectorXd& w, int band);

double pf_fused(const SensingScenario& s, const Eigen::VectorXd& w, double threshold, int band);
double pd_fused(const SensingScenario& s, const Eigen::VectorXd& w, double threshold, int band);

/// Exact per-band metrics plus the throughput and interference aggregates
/// for a full design. Validates the design first.
DetectionMetrics metrics(const SensingScenario& s, const PolicyConstraints& p,
                         const FusionDesign& d);

/// Analytic gradients of pf_k and pd_k with respect to (w_k, gamma_k).
struct BandGradients {
  Eigen::VectorXd dpf_dw;
  Eigen::VectorXd dpd_dw;
  double dpf_dgamma;
  double dpd_dgamma;
};

std::vector<BandGradients> metric_gradients(const SensingScenario& s, const FusionDesign& d);

}  // namespace specsense
