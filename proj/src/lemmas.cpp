// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#include "specsense/lemmas.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "specsense/qfunc.hpp"
#include "specsense/surrogate.hpp"

namespace specsense {

namespace {

struct Point {
  Eigen::VectorXd w;
  double gamma;
};

std::string describe(const Point& a, const Point& b, double defect) {
  std::ostringstream os;
  os << "defect " << defect << " at gamma_a=" << a.gamma << " gamma_b=" << b.gamma;
  return os.str();
}

}  // namespace

LemmaReport verify_lemma_convexity(const SensingScenario& s, int band, int trials,
                                   std::uint64_t seed, double tolerance) {
  if (band < 0 || band >= s.num_bands) throw std::invalid_argument("lemma check: bad band");
  if (trials < 1) throw std::invalid_argument("lemma check: trials must be >= 1");

  const int N = s.num_radios;
  const double nv = s.noise_variance;
  const double M = s.samples_per_band;
  const Eigen::VectorXd gains = s.channel_gains.row(band).transpose();
  const double smin = std::sqrt(nv + 2.0 * gains.minCoeff());

  // Weight scale chosen so that the affine arguments span a few units, where
  // the curvature of Q is actually exercised.
  const double wref = 1.0 / (std::sqrt(nv) * std::sqrt(2.0 * M * N * (nv + 2.0 * gains.mean())));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto sample_weights = [&]() {
    Eigen::VectorXd w(N);
    do {
      for (int n = 0; n < N; ++n) w[n] = 2.0 * wref * unit(rng);
    } while (w.maxCoeff() <= 0.0);
    return w;
  };

  LemmaReport report;
  report.concavity.trials = trials;
  report.convexity.trials = trials;

  auto u_of = [&](const Point& pt) {
    double usig = 0;
    for (int n = 0; n < N; ++n) usig += pt.w[n] * (nv + gains[n]);
    return pt.gamma - M * usig;
  };
  auto t_of = [&](const Point& pt) { return pt.gamma / nv - M * pt.w.sum(); };

  for (int trial = 0; trial < trials; ++trial) {
    // Lemma: concavity of Q(u) on u <= 0. Sample gammas below the H1 mean.
    Point a, b;
    a.w = sample_weights();
    b.w = sample_weights();
    double bound_a = 0, bound_b = 0;
    for (int n = 0; n < N; ++n) {
      bound_a += M * a.w[n] * (nv + gains[n]);
      bound_b += M * b.w[n] * (nv + gains[n]);
    }
    a.gamma = bound_a * unit(rng);
    b.gamma = bound_b * unit(rng);
    Point mid{0.5 * (a.w + b.w), 0.5 * (a.gamma + b.gamma)};
    const double fa = q_tail(u_of(a));
    const double fb = q_tail(u_of(b));
    const double fm = q_tail(u_of(mid));
    const double defect = 0.5 * (fa + fb) - fm;  // concave: defect <= 0
    if (defect > tolerance) {
      report.concavity.violations++;
      report.concavity.worst_violation = std::max(report.concavity.worst_violation, defect);
      if (report.concavity.witnesses.size() < 5) {
        report.concavity.witnesses.push_back(describe(a, b, defect));
      }
    }

    // Lemma: convexity of g on t >= 0. Sample gammas above the H0 mean.
    Point c, d;
    c.w = sample_weights();
    d.w = sample_weights();
    const double span = nv * 6.0 / smin;
    c.gamma = nv * M * c.w.sum() + span * unit(rng);
    d.gamma = nv * M * d.w.sum() + span * unit(rng);
    Point midg{0.5 * (c.w + d.w), 0.5 * (c.gamma + d.gamma)};
    const double gc = q_tail(t_of(c) * smin);
    const double gd = q_tail(t_of(d) * smin);
    const double gm = q_tail(t_of(midg) * smin);
    const double gdefect = gm - 0.5 * (gc + gd);  // convex: defect <= 0
    if (gdefect > tolerance) {
      report.convexity.violations++;
      report.convexity.worst_violation = std::max(report.convexity.worst_violation, gdefect);
      if (report.convexity.witnesses.size() < 5) {
        report.convexity.witnesses.push_back(describe(c, d, gdefect));
      }
    }
  }
  return report;
}

}  // namespace specsense
