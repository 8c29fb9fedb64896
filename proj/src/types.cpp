// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#include "specsense/types.hpp"

#include <cmath>
#include <sstream>

namespace specsense {

namespace {
void check_len(std::vector<Violation>& out, const Eigen::VectorXd& v, int expected,
               const char* field) {
  if (v.size() != expected) {
    std::ostringstream os;
    os << "expected " << expected << " entries, got " << v.size();
    out.push_back({field, os.str()});
  }
}

void check_finite(std::vector<Violation>& out, const Eigen::VectorXd& v, const char* field) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      std::ostringstream os;
      os << "entry " << i << " is not finite";
      out.push_back({field, os.str()});
      return;
    }
  }
}
}  // namespace

std::string ValidationResult::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].field << ": " << violations[i].message;
  }
  return os.str();
}

ValidationResult validate_scenario(const SensingScenario& s, const PolicyConstraints& p) {
  ValidationResult r;
  auto& v = r.violations;
  if (s.num_bands < 1) v.push_back({"num_bands", "must be >= 1"});
  if (s.num_radios < 1) v.push_back({"num_radios", "must be >= 1"});
  if (s.samples_per_band < 1) v.push_back({"samples_per_band", "must be >= 1"});
  if (!(s.noise_variance > 0) || !std::isfinite(s.noise_variance)) {
    v.push_back({"noise_variance", "must be a positive finite real"});
  }
  if (s.channel_gains.rows() != s.num_bands || s.channel_gains.cols() != s.num_radios) {
    std::ostringstream os;
    os << "expected " << s.num_bands << "x" << s.num_radios << " matrix, got "
       << s.channel_gains.rows() << "x" << s.channel_gains.cols();
    v.push_back({"channel_gains", os.str()});
  } else {
    for (int k = 0; k < s.num_bands; ++k) {
      for (int n = 0; n < s.num_radios; ++n) {
        double g = s.channel_gains(k, n);
        if (!(g >= 0) || !std::isfinite(g)) {
          std::ostringstream os;
          os << "entry (" << k << "," << n << ") must be a nonnegative squared magnitude";
          v.push_back({"channel_gains", os.str()});
        }
      }
    }
  }

  const int K = s.num_bands;
  check_len(v, p.miss_caps, K, "miss_caps");
  check_len(v, p.false_alarm_caps, K, "false_alarm_caps");
  check_len(v, p.interference_costs, K, "interference_costs");
  check_len(v, p.throughput_rates, K, "throughput_rates");
  check_finite(v, p.miss_caps, "miss_caps");
  check_finite(v, p.false_alarm_caps, "false_alarm_caps");
  check_finite(v, p.interference_costs, "interference_costs");
  check_finite(v, p.throughput_rates, "throughput_rates");

  if (p.miss_caps.size() == K) {
    for (int k = 0; k < K; ++k) {
      if (!(p.miss_caps[k] > 0.0 && p.miss_caps[k] <= 0.5)) {
        std::ostringstream os;
        os << "entry " << k << " = " << p.miss_caps[k] << " outside (0, 1/2]";
        v.push_back({"miss_caps", os.str()});
      }
    }
  }
  if (p.false_alarm_caps.size() == K) {
    for (int k = 0; k < K; ++k) {
      if (!(p.false_alarm_caps[k] > 0.0 && p.false_alarm_caps[k] <= 0.5)) {
        std::ostringstream os;
        os << "entry " << k << " = " << p.false_alarm_caps[k] << " outside (0, 1/2]";
        v.push_back({"false_alarm_caps", os.str()});
      }
    }
  }
  if (p.interference_costs.size() == K && (p.interference_costs.array() < 0).any()) {
    v.push_back({"interference_costs", "entries must be nonnegative"});
  }
  if (p.throughput_rates.size() == K && (p.throughput_rates.array() < 0).any()) {
    v.push_back({"throughput_rates", "entries must be nonnegative"});
  }
  if (!(p.interference_budget > 0) || !std::isfinite(p.interference_budget)) {
    v.push_back({"interference_budget", "must be a positive finite real"});
  }
  return r;
}

void ensure_valid(const SensingScenario& s, const PolicyConstraints& p) {
  ValidationResult r = validate_scenario(s, p);
  if (!r.ok()) {
    throw std::invalid_argument("invalid instance: " + r.to_string());
  }
}

ValidationResult validate_design(const SensingScenario& s, const FusionDesign& d) {
  ValidationResult r;
  auto& v = r.violations;
  if (d.weights.rows() != s.num_bands || d.weights.cols() != s.num_radios) {
    v.push_back({"weights", "dimension mismatch with scenario"});
    return r;
  }
  if (d.thresholds.size() != s.num_bands) {
    v.push_back({"thresholds", "dimension mismatch with scenario"});
    return r;
  }
  for (int k = 0; k < s.num_bands; ++k) {
    if ((d.weights.row(k).array() < 0).any()) {
      std::ostringstream os;
      os << "band " << k << " has a negative weight";
      v.push_back({"weights", os.str()});
    }
    if (d.weights.row(k).norm() < 1e-12) {
      std::ostringstream os;
      os << "band " << k << " weight vector is (numerically) zero";
      v.push_back({"weights", os.str()});
    }
    if (!(d.thresholds[k] > 0)) {
      std::ostringstream os;
      os << "band " << k << " threshold must be positive";
      v.push_back({"thresholds", os.str()});
    }
  }
  return r;
}

}  // namespace specsense
