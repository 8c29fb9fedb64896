// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace specsense {

/// Standard normal tail probability Pr(Z > x).
double q_tail(double x);

/// Inverse of q_tail on (0, 1). Throws std::domain_error outside the open
/// interval. q_tail_inv(p) >= 0 iff p <= 1/2.
double q_tail_inv(double p);

/// Standard normal density.
double normal_pdf(double x);

}  // namespace specsense
