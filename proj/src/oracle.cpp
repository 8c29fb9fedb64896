// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#include "specsense/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "specsense/fusion.hpp"

namespace specsense {

namespace {

struct Candidate {
  double w;      // N = 1 weight
  double gamma;
  double pf;
  double pm;
};

// All (w, gamma) grid points of one band for N = 1, already filtered by the
// per-band caps.
std::vector<Candidate> band_candidates(const SensingScenario& s, const PolicyConstraints& p,
                                       int band, int resolution, long long& evaluated) {
  std::vector<Candidate> out;
  const double nv = s.noise_variance;
  const double M = s.samples_per_band;
  const double g = s.channel_gains(band, 0);
  Eigen::VectorXd w(1);
  for (int i = 1; i <= resolution; ++i) {
    w[0] = static_cast<double>(i) / resolution;
    const double lo = nv * M * w[0];
    const double hi = M * (nv + g) * w[0];
    for (int j = 0; j < resolution; ++j) {
      const double gamma = lo + (hi - lo) * j / (resolution - 1);
      const double pf = pf_fused(s, w, gamma, band);
      const double pm = 1.0 - pd_fused(s, w, gamma, band);
      ++evaluated;
      if (pm <= p.miss_caps[band] && pf <= p.false_alarm_caps[band]) {
        out.push_back({w[0], gamma, pf, pm});
      }
    }
  }
  return out;
}

OracleResult search_k1(const SensingScenario& s, const PolicyConstraints& p, int resolution) {
  OracleResult res;
  const int N = s.num_radios;
  const double nv = s.noise_variance;
  const double M = s.samples_per_band;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(N);
  Eigen::VectorXd best_w;
  double best_gamma = 0;
  double best = -1;

  // Recursive sweep over the weight lattice [0,1]^N, gamma nested innermost.
  auto sweep = [&](auto&& self, int depth) -> void {
    if (depth == N) {
      if (w.maxCoeff() <= 0) return;
      double usig = 0;
      for (int n = 0; n < N; ++n) usig += w[n] * (nv + s.channel_gains(0, n));
      const double lo = nv * M * w.sum();
      const double hi = M * usig;
      if (!(hi > lo)) return;
      for (int j = 0; j < resolution; ++j) {
        const double gamma = lo + (hi - lo) * j / (resolution - 1);
        const double pf = pf_fused(s, w, gamma, 0);
        const double pm = 1.0 - pd_fused(s, w, gamma, 0);
        ++res.points_evaluated;
        if (pm <= p.miss_caps[0] && pf <= p.false_alarm_caps[0] &&
            p.interference_costs[0] * pm <= p.interference_budget) {
          const double obj = p.throughput_rates[0] * (1.0 - pf);
          if (obj > best) {
            best = obj;
            best_w = w;
            best_gamma = gamma;
          }
        }
      }
      return;
    }
    for (int i = 0; i <= resolution; ++i) {
      w[depth] = static_cast<double>(i) / resolution;
      self(self, depth + 1);
    }
  };
  sweep(sweep, 0);

  if (best >= 0) {
    res.found_feasible = true;
    res.objective = best;
    res.design.weights = best_w.transpose();
    res.design.thresholds = Eigen::VectorXd::Constant(1, best_gamma);
  }
  return res;
}

OracleResult search_k2_n1(const SensingScenario& s, const PolicyConstraints& p, int resolution) {
  OracleResult res;
  std::vector<Candidate> c0 = band_candidates(s, p, 0, resolution, res.points_evaluated);
  std::vector<Candidate> c1 = band_candidates(s, p, 1, resolution, res.points_evaluated);
  if (c0.empty() || c1.empty()) return res;

  // Sort band-1 candidates by miss probability and keep a running best of the
  // objective so each band-0 candidate needs one binary search.
  std::sort(c1.begin(), c1.end(),
            [](const Candidate& a, const Candidate& b) { return a.pm < b.pm; });
  std::vector<double> pm1(c1.size()), best_obj1(c1.size());
  std::vector<int> best_idx1(c1.size());
  double running = -1;
  int running_idx = -1;
  for (size_t i = 0; i < c1.size(); ++i) {
    pm1[i] = c1[i].pm;
    const double obj = p.throughput_rates[1] * (1.0 - c1[i].pf);
    if (obj > running) {
      running = obj;
      running_idx = static_cast<int>(i);
    }
    best_obj1[i] = running;
    best_idx1[i] = running_idx;
  }

  double best = -1;
  const Candidate* pick0 = nullptr;
  const Candidate* pick1 = nullptr;
  for (const Candidate& a : c0) {
    const double budget = p.interference_budget - p.interference_costs[0] * a.pm;
    if (budget < 0) continue;
    const double cap = p.interference_costs[1] > 0
                           ? budget / p.interference_costs[1]
                           : std::numeric_limits<double>::infinity();
    auto it = std::upper_bound(pm1.begin(), pm1.end(), cap);
    if (it == pm1.begin()) continue;
    const size_t idx = static_cast<size_t>(it - pm1.begin()) - 1;
    const double obj = p.throughput_rates[0] * (1.0 - a.pf) + best_obj1[idx];
    if (obj > best) {
      best = obj;
      pick0 = &a;
      pick1 = &c1[best_idx1[idx]];
    }
  }

  if (pick0 != nullptr) {
    res.found_feasible = true;
    res.objective = best;
    res.design.weights.resize(2, 1);
    res.design.weights(0, 0) = pick0->w;
    res.design.weights(1, 0) = pick1->w;
    res.design.thresholds.resize(2);
    res.design.thresholds[0] = pick0->gamma;
    res.design.thresholds[1] = pick1->gamma;
  }
  return res;
}

}  // namespace

OracleResult oracle_grid_search(const SensingScenario& s, const PolicyConstraints& p,
                                int resolution) {
  ensure_valid(s, p);
  if (resolution < 2) throw std::invalid_argument("oracle: resolution must be >= 2");
  const long long vars = static_cast<long long>(s.num_bands) * (s.num_radios + 1);
  if (vars > 4) {
    throw std::invalid_argument("oracle: refusing instances with more than 4 variables");
  }
  double points = 1;
  for (int i = 0; i < s.num_radios; ++i) points *= resolution + 1;
  points *= resolution;
  if (s.num_bands == 1 && points > 5e8) {
    throw std::invalid_argument("oracle: resolution too high for this dimension");
  }
  if (s.num_bands == 1) return search_k1(s, p, resolution);
  return search_k2_n1(s, p, resolution);
}

}  // namespace specsense
