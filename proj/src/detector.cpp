// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#include "specsense/detector.hpp"

#include <cmath>
#include <stdexcept>

#include "specsense/qfunc.hpp"

namespace specsense {

namespace {
void check_params(int samples, double noise_var) {
  if (samples < 1) throw std::invalid_argument("detector: samples must be >= 1");
  if (!(noise_var > 0)) throw std::invalid_argument("detector: noise variance must be > 0");
}
}  // namespace

EnergyMoments energy_moments(int samples, double noise_var, double gain) {
  check_params(samples, noise_var);
  if (gain < 0) throw std::invalid_argument("detector: gain must be >= 0");
  const double M = samples;
  return {M * noise_var, M * (noise_var + gain), 2.0 * M * noise_var * noise_var,
          2.0 * M * (noise_var + 2.0 * gain) * noise_var};
}

double pf_single(double threshold, int samples, double noise_var) {
  check_params(samples, noise_var);
  const double M = samples;
  return q_tail((threshold - M * noise_var) / (noise_var * std::sqrt(2.0 * M)));
}

double pd_single(double threshold, int samples, double noise_var, double gain) {
  check_params(samples, noise_var);
  if (gain < 0) throw std::invalid_argument("detector: gain must be >= 0");
  const double M = samples;
  const double sv = std::sqrt(noise_var);
  return q_tail((threshold - M * (noise_var + gain)) /
                (sv * std::sqrt(2.0 * M * (noise_var + 2.0 * gain))));
}

double threshold_for_pf(double target_pf, int samples, double noise_var) {
  check_params(samples, noise_var);
  const double M = samples;
  return M * noise_var + noise_var * std::sqrt(2.0 * M) * q_tail_inv(target_pf);
}

}  // namespace specsense
