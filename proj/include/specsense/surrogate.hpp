// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "specsense/types.hpp"

namespace specsense {

/// Per-band scale mu_k = sv sqrt(2M w'[sv2 I + 2 diag(G_k)] w), the H1
/// standard deviation of the fused statistic.
double fused_scale(const SensingScenario& s, const Eigen::VectorXd& w, int band);

/// Design expressed in scale-normalized variables w' = w/mu, gamma' = gamma/mu.
/// Because pf/pd are invariant under joint scaling of (w, gamma), a primed
/// design denotes the same operating point as the original.
struct TransformedDesign {
  Eigen::MatrixXd weights_primed;     // K x N
  Eigen::VectorXd thresholds_primed;  // length K
};

TransformedDesign to_primed(const SensingScenario& s, const FusionDesign& d);

/// Maps primed variables back to a design (identity up to scale) and applies
/// the canonical per-band normalization max_n w_k(n) = 1.
FusionDesign from_primed(const TransformedDesign& t);

/// Canonical representative of a scale-invariant design: per band, weights
/// divided by their maximum (thresholds rescaled accordingly).
FusionDesign canonical_design(const FusionDesign& d);

/// Concave-programming upper bound on the false-alarm probability in primed
/// variables: Q((gamma'/sv2 - M 1'w') sqrt(sv2 + 2 min_n G_k(n))). Bounds the
/// exact pf from above for designs satisfying the scale normalization
/// mu_k <= sigma_v (tight when the band's gains are equal across radios).
double surrogate_pf_bound(const SensingScenario& s, const Eigen::VectorXd& w_primed,
                          double gamma_primed, int band);

}  // namespace specsense
