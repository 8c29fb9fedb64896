// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#include "specsense/surrogate.hpp"

#include <cmath>
#include <stdexcept>

#include "specsense/qfunc.hpp"

namespace specsense {

double fused_scale(const SensingScenario& s, const Eigen::VectorXd& w, int band) {
  if (band < 0 || band >= s.num_bands) throw std::invalid_argument("fused_scale: band out of range");
  if (w.size() != s.num_radios) throw std::invalid_argument("fused_scale: weight length mismatch");
  if (w.norm() < 1e-12) throw DegenerateDesignError("fused_scale: zero weight vector");
  const double M = s.samples_per_band;
  const double nv = s.noise_variance;
  double quad = 0;
  for (int n = 0; n < s.num_radios; ++n) {
    quad += w[n] * w[n] * (nv + 2.0 * s.channel_gains(band, n));
  }
  return std::sqrt(nv) * std::sqrt(2.0 * M * quad);
}

TransformedDesign to_primed(const SensingScenario& s, const FusionDesign& d) {
  TransformedDesign t;
  t.weights_primed.resize(d.weights.rows(), d.weights.cols());
  t.thresholds_primed.resize(d.thresholds.size());
  for (int k = 0; k < s.num_bands; ++k) {
    const double mu = fused_scale(s, d.weights.row(k).transpose(), k);
    t.weights_primed.row(k) = d.weights.row(k) / mu;
    t.thresholds_primed[k] = d.thresholds[k] / mu;
  }
  return t;
}

FusionDesign from_primed(const TransformedDesign& t) {
  FusionDesign d;
  d.weights = t.weights_primed;
  d.thresholds = t.thresholds_primed;
  return canonical_design(d);
}

FusionDesign canonical_design(const FusionDesign& d) {
  FusionDesign out = d;
  for (Eigen::Index k = 0; k < d.weights.rows(); ++k) {
    const double m = d.weights.row(k).maxCoeff();
    if (m <= 0) throw DegenerateDesignError("canonical_design: no positive weight in band");
    out.weights.row(k) /= m;
    out.thresholds[k] /= m;
  }
  return out;
}

double surrogate_pf_bound(const SensingScenario& s, const Eigen::VectorXd& w_primed,
                          double gamma_primed, int band) {
  if (band < 0 || band >= s.num_bands) {
    throw std::invalid_argument("surrogate_pf_bound: band out of range");
  }
  if (w_primed.size() != s.num_radios) {
    throw std::invalid_argument("surrogate_pf_bound: weight length mismatch");
  }
  if (w_primed.norm() < 1e-12) throw DegenerateDesignError("surrogate_pf_bound: zero weights");
  const double M = s.samples_per_band;
  const double nv = s.noise_variance;
  const double gmin = s.channel_gains.row(band).minCoeff();
  const double t = gamma_primed / nv - M * w_primed.sum();
  return q_tail(t * std::sqrt(nv + 2.0 * gmin));
}

}  // namespace specsense
