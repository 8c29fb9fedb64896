// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specsense/types.hpp"

namespace specsense {

struct MidpointCheck {
  int trials = 0;
  int violations = 0;
  double worst_violation = 0;  // most positive defect beyond the tolerance
  std::vector<std::string> witnesses;
};

/// Numerical verification of the two curvature facts the convex program
/// rests on, by midpoint inequalities on random in-region point pairs:
///  - Q(u(gamma', w')) is concave where u <= 0 (detection-probability term
///    of the interference coupling);
///  - the surrogate false-alarm bound g(gamma', w') is convex where t >= 0.
/// Pairs are sampled inside the respective region by construction; the
/// regions are half-spaces, so midpoints stay inside.
struct LemmaReport {
  MidpointCheck concavity;  // coupling term, region u <= 0
  MidpointCheck convexity;  // surrogate bound, region t >= 0
};

LemmaReport verify_lemma_convexity(const SensingScenario& s, int band, int trials,
                                   std::uint64_t seed, double tolerance = 1e-12);

}  // namespace specsense
