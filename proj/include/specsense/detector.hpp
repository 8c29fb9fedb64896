// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace specsense {

/// Gaussian approximation of the per-band energy statistic for one radio:
/// summed energy over M samples with noise variance sigma_v^2 and squared
/// channel gain g.
struct EnergyMoments {
  double mean_h0;  // M sigma_v^2
  double mean_h1;  // M (sigma_v^2 + g)
  double var_h0;   // 2 M sigma_v^4
  double var_h1;   // 2 M (sigma_v^2 + 2 g) sigma_v^2
};

EnergyMoments energy_moments(int samples, double noise_var, double gain);

/// False-alarm probability of a single energy detector at threshold gamma.
/// Strictly decreasing in gamma.
double pf_single(double threshold, int samples, double noise_var);

/// Detection probability of a single energy detector; for gain == 0 it
/// coincides with pf_single.
double pd_single(double threshold, int samples, double noise_var, double gain);

/// Threshold achieving a target false-alarm probability (inverse of
/// pf_single). Throws std::domain_error unless 0 < target < 1.
double threshold_for_pf(double target_pf, int samples, double noise_var);

}  // namespace specsense
