// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#include "specsense/fusion.hpp"

#include <cmath>
#include <sstream>

#include "specsense/qfunc.hpp"

namespace specsense {

namespace {
void check_band(const SensingScenario& s, const Eigen::VectorXd& w, int band) {
  if (band < 0 || band >= s.num_bands) throw std::invalid_argument("fusion: band out of range");
  if (w.size() != s.num_radios) throw std::invalid_argument("fusion: weight length != num_radios");
  if (w.norm() < 1e-12) {
    std::ostringstream os;
    os << "fusion: zero weight vector on band " << band;
    throw DegenerateDesignError(os.str());
  }
}

// w'[sv2 I + 2 diag(G_k)] w accumulated per component so that indicator
// weights reduce bit-for-bit to the single-detector expression.
double quad_form(const SensingScenario& s, const Eigen::VectorXd& w, int band) {
  double acc = 0;
  for (int n = 0; n < s.num_radios; ++n) {
    acc += w[n] * w[n] * (s.noise_variance + 2.0 * s.channel_gains(band, n));
  }
  return acc;
}
}  // namespace

FusedMoments fused_moments(const SensingScenario& s, const Eigen::VectorXd& w, int band) {
  check_band(s, w, band);
  const double M = s.samples_per_band;
  const double nv = s.noise_variance;
  const double wsum = w.sum();
  const double wdot = w.squaredNorm();
  const double wsig = w.dot((nv + s.channel_gains.row(band).transpose().array()).matrix());
  return {M * nv * wsum, M * wsig, 2.0 * M * nv * nv * wdot, 2.0 * M * nv * quad_form(s, w, band)};
}

double pf_fused(const SensingScenario& s, const Eigen::VectorXd& w, double threshold, int band) {
  check_band(s, w, band);
  const double M = s.samples_per_band;
  const double nv = s.noise_variance;
  return q_tail((threshold - M * nv * w.sum()) / (nv * std::sqrt(2.0 * M * w.squaredNorm())));
}

double pd_fused(const SensingScenario& s, const Eigen::VectorXd& w, double threshold, int band) {
  check_band(s, w, band);
  const double M = s.samples_per_band;
  const double nv = s.noise_variance;
  const double sv = std::sqrt(nv);
  const double wsig = w.dot((nv + s.channel_gains.row(band).transpose().array()).matrix());
  return q_tail((threshold - M * wsig) / (sv * std::sqrt(2.0 * M * quad_form(s, w, band))));
}

DetectionMetrics metrics(const SensingScenario& s, const PolicyConstraints& p,
                         const FusionDesign& d) {
  ensure_valid(s, p);
  ValidationResult dv = validate_design(s, d);
  if (!dv.ok()) throw std::invalid_argument("invalid design: " + dv.to_string());

  const int K = s.num_bands;
  DetectionMetrics m;
  m.pf.resize(K);
  m.pd.resize(K);
  m.pm.resize(K);
  for (int k = 0; k < K; ++k) {
    Eigen::VectorXd w = d.weights.row(k).transpose();
    m.pf[k] = pf_fused(s, w, d.thresholds[k], k);
    m.pd[k] = pd_fused(s, w, d.thresholds[k], k);
    m.pm[k] = 1.0 - m.pd[k];
  }
  m.throughput = p.throughput_rates.dot((1.0 - m.pf.array()).matrix());
  m.interference = p.interference_costs.dot(m.pm);
  return m;
}

std::vector<BandGradients> metric_gradients(const SensingScenario& s, const FusionDesign& d) {
  const int K = s.num_bands;
  const int N = s.num_radios;
  const double M = s.samples_per_band;
  const double nv = s.noise_variance;
  const double sv = std::sqrt(nv);

  std::vector<BandGradients> out(K);
  for (int k = 0; k < K; ++k) {
    Eigen::VectorXd w = d.weights.row(k).transpose();
    check_band(s, w, k);
    const double gamma = d.thresholds[k];
    Eigen::VectorXd gk = s.channel_gains.row(k).transpose();
    Eigen::VectorXd sig = (nv + gk.array()).matrix();  // sv2 1 + G_k
    Eigen::VectorXd Aw = (w.array() * (nv + 2.0 * gk.array())).matrix();

    // pf = Q(a), a = (gamma - M nv 1'w) / (nv sqrt(2M) ||w||)
    const double nw = w.norm();
    const double D0 = nv * std::sqrt(2.0 * M) * nw;
    const double a = (gamma - M * nv * w.sum()) / D0;
    const double pa = normal_pdf(a);
    BandGradients g;
    g.dpf_dgamma = -pa / D0;
    g.dpf_dw = -pa * (Eigen::VectorXd::Constant(N, -M * nv / D0) - (a / (nw * nw)) * w);

    // pd = Q(b), b = (gamma - M w'sig) / (sv sqrt(2M w'Aw))
    const double wAw = w.dot(Aw);
    const double D1 = sv * std::sqrt(2.0 * M * wAw);
    const double b = (gamma - M * w.dot(sig)) / D1;
    const double pb = normal_pdf(b);
    g.dpd_dgamma = -pb / D1;
    g.dpd_dw = -pb * ((-M / D1) * sig - (b / wAw) * Aw);
    out[k] = std::move(g);
  }
  return out;
}

}  // namespace specsense
