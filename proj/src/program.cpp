// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#include "specsense/program.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specsense/qfunc.hpp"

namespace specsense {

namespace {
constexpr double kConeMargin = 0.995;  // initial weight scale inside mu <= 1
constexpr double kStrictTol = 1e-10;
}  // namespace

ConvexProgram::ConvexProgram(const SensingScenario& s, const PolicyConstraints& p,
                             int fixed_radio, bool paper_compat)
    : s_(s), p_(p), fixed_radio_(fixed_radio), paper_compat_(paper_compat) {
  ensure_valid(s, p);
  const int K = s.num_bands;
  const int N = s.num_radios;
  const double nv = s.noise_variance;
  const double sv = std::sqrt(nv);
  const double M = s.samples_per_band;

  smin_.resize(K);
  q_beta_.resize(K);
  kappa_.resize(K);
  for (int k = 0; k < K; ++k) {
    smin_[k] = std::sqrt(nv + 2.0 * s.channel_gains.row(k).minCoeff());
    q_beta_[k] = q_tail_inv(p.false_alarm_caps[k]);
    kappa_[k] = q_tail_inv(1.0 - p.miss_caps[k]) * (paper_compat ? sv : 1.0);
  }
  obj_scale_ = std::max(1.0, p.throughput_rates.sum());

  if (fixed_radio_ >= 0) {
    if (fixed_radio_ >= N) throw std::invalid_argument("single_radio: radio index out of range");
    dim_ = K;
    fixed_weights_ = Eigen::MatrixXd::Zero(K, N);
    for (int k = 0; k < K; ++k) {
      const double a = nv + 2.0 * s.channel_gains(k, fixed_radio_);
      fixed_weights_(k, fixed_radio_) = 1.0 / (sv * std::sqrt(2.0 * M * a));
    }
  } else {
    dim_ = K * (N + 1);
  }

  info_.push_back({ConstraintKind::kInterferenceCoupling, -1, -1});
  for (int k = 0; k < K; ++k) {
    info_.push_back({ConstraintKind::kFalseAlarm, k, -1});
    info_.push_back({ConstraintKind::kMiss, k, -1});
    info_.push_back({ConstraintKind::kRegionLower, k, -1});
    info_.push_back({ConstraintKind::kRegionUpper, k, -1});
    if (fixed_radio_ < 0) {
      info_.push_back({ConstraintKind::kNormalization, k, -1});
      for (int n = 0; n < N; ++n) {
        info_.push_back({ConstraintKind::kNonnegativity, k, n});
      }
    }
  }
}

ConvexProgram ConvexProgram::joint(const SensingScenario& s, const PolicyConstraints& p,
                                   bool paper_compat) {
  return ConvexProgram(s, p, -1, paper_compat);
}

ConvexProgram ConvexProgram::single_radio(const SensingScenario& s, const PolicyConstraints& p,
                                          int radio, bool paper_compat) {
  return ConvexProgram(s, p, radio, paper_compat);
}

int ConvexProgram::count(ConstraintKind kind) const {
  return static_cast<int>(
      std::count_if(info_.begin(), info_.end(),
                    [kind](const ConstraintInfo& c) { return c.kind == kind; }));
}

int ConvexProgram::gamma_index(int band) const {
  return fixed_radio_ >= 0 ? band : band * (s_.num_radios + 1) + s_.num_radios;
}

int ConvexProgram::weight_index(int band, int radio) const {
  return fixed_radio_ >= 0 ? -1 : band * (s_.num_radios + 1) + radio;
}

ConvexProgram::BandEval ConvexProgram::band_eval(const Eigen::VectorXd& x, int band) const {
  BandEval e;
  const int N = s_.num_radios;
  const double nv = s_.noise_variance;
  const double M = s_.samples_per_band;
  if (fixed_radio_ >= 0) {
    e.w = fixed_weights_.row(band).transpose();
    e.gamma = x[band];
  } else {
    e.w = x.segment(band * (N + 1), N);
    e.gamma = x[band * (N + 1) + N];
  }
  e.t = e.gamma / nv - M * e.w.sum();
  double usig = 0, quad = 0;
  for (int n = 0; n < N; ++n) {
    usig += e.w[n] * (nv + s_.channel_gains(band, n));
    quad += e.w[n] * e.w[n] * (nv + 2.0 * s_.channel_gains(band, n));
  }
  e.u = e.gamma - M * usig;
  e.wnorm = e.w.norm();
  e.wAw = quad;
  return e;
}

Eigen::VectorXd ConvexProgram::grad_t(int band) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
  g[gamma_index(band)] = 1.0 / s_.noise_variance;
  if (fixed_radio_ < 0) {
    for (int n = 0; n < s_.num_radios; ++n) {
      g[weight_index(band, n)] = -static_cast<double>(s_.samples_per_band);
    }
  }
  return g;
}

Eigen::VectorXd ConvexProgram::grad_u(int band) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
  g[gamma_index(band)] = 1.0;
  if (fixed_radio_ < 0) {
    for (int n = 0; n < s_.num_radios; ++n) {
      g[weight_index(band, n)] =
          -s_.samples_per_band * (s_.noise_variance + s_.channel_gains(band, n));
    }
  }
  return g;
}

double ConvexProgram::objective(const Eigen::VectorXd& x) const {
  double acc = 0;
  for (int k = 0; k < s_.num_bands; ++k) {
    const BandEval e = band_eval(x, k);
    acc += p_.throughput_rates[k] / obj_scale_ * (1.0 - q_tail(e.t * smin_[k]));
  }
  return acc;
}

Eigen::VectorXd ConvexProgram::objective_gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
  for (int k = 0; k < s_.num_bands; ++k) {
    const BandEval e = band_eval(x, k);
    const double coef =
        p_.throughput_rates[k] / obj_scale_ * normal_pdf(e.t * smin_[k]) * smin_[k];
    g += coef * grad_t(k);
  }
  return g;
}

Eigen::MatrixXd ConvexProgram::objective_hessian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int k = 0; k < s_.num_bands; ++k) {
    const BandEval e = band_eval(x, k);
    const double a = e.t * smin_[k];
    const double coef =
        -p_.throughput_rates[k] / obj_scale_ * smin_[k] * smin_[k] * a * normal_pdf(a);
    const Eigen::VectorXd gt = grad_t(k);
    H += coef * gt * gt.transpose();
  }
  return H;
}

double ConvexProgram::constraint_value(int i, const Eigen::VectorXd& x) const {
  const ConstraintInfo& c = info_[i];
  const double M = s_.samples_per_band;
  const double nv = s_.noise_variance;
  switch (c.kind) {
    case ConstraintKind::kInterferenceCoupling: {
      double acc = p_.interference_costs.sum() - p_.interference_budget;
      for (int k = 0; k < s_.num_bands; ++k) {
        acc -= p_.interference_costs[k] * q_tail(band_eval(x, k).u);
      }
      return acc;
    }
    case ConstraintKind::kFalseAlarm: {
      const BandEval e = band_eval(x, c.band);
      return q_beta_[c.band] * std::sqrt(2.0 * M) * e.wnorm - e.t;
    }
    case ConstraintKind::kMiss:
      return band_eval(x, c.band).u - kappa_[c.band];
    case ConstraintKind::kRegionLower: {
      const BandEval e = band_eval(x, c.band);
      return nv * M * e.w.sum() - e.gamma;
    }
    case ConstraintKind::kRegionUpper:
      return band_eval(x, c.band).u;
    case ConstraintKind::kNormalization:
      return 2.0 * M * nv * band_eval(x, c.band).wAw - 1.0;
    case ConstraintKind::kNonnegativity:
      return -x[weight_index(c.band, c.radio)];
  }
  return 0;
}

Eigen::VectorXd ConvexProgram::constraint_gradient(int i, const Eigen::VectorXd& x) const {
  const ConstraintInfo& c = info_[i];
  const double M = s_.samples_per_band;
  const double nv = s_.noise_variance;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
  switch (c.kind) {
    case ConstraintKind::kInterferenceCoupling: {
      for (int k = 0; k < s_.num_bands; ++k) {
        const BandEval e = band_eval(x, k);
        g += p_.interference_costs[k] * normal_pdf(e.u) * grad_u(k);
      }
      return g;
    }
    case ConstraintKind::kFalseAlarm: {
      const BandEval e = band_eval(x, c.band);
      g = -grad_t(c.band);
      if (fixed_radio_ < 0 && q_beta_[c.band] != 0.0) {
        const double coef = q_beta_[c.band] * std::sqrt(2.0 * M);
        for (int n = 0; n < s_.num_radios; ++n) {
          g[weight_index(c.band, n)] += coef * e.w[n] / e.wnorm;
        }
      }
      return g;
    }
    case ConstraintKind::kMiss:
    case ConstraintKind::kRegionUpper:
      return grad_u(c.band);
    case ConstraintKind::kRegionLower: {
      g[gamma_index(c.band)] = -1.0;
      if (fixed_radio_ < 0) {
        for (int n = 0; n < s_.num_radios; ++n) {
          g[weight_index(c.band, n)] = nv * M;
        }
      }
      return g;
    }
    case ConstraintKind::kNormalization: {
      const BandEval e = band_eval(x, c.band);
      for (int n = 0; n < s_.num_radios; ++n) {
        g[weight_index(c.band, n)] =
            4.0 * M * nv * e.w[n] * (nv + 2.0 * s_.channel_gains(c.band, n));
      }
      return g;
    }
    case ConstraintKind::kNonnegativity:
      g[weight_index(c.band, c.radio)] = -1.0;
      return g;
  }
  return g;
}

void ConvexProgram::add_constraint_hessian(int i, const Eigen::VectorXd& x, double coef,
                                           Eigen::MatrixXd& H) const {
  const ConstraintInfo& c = info_[i];
  const double M = s_.samples_per_band;
  const double nv = s_.noise_variance;
  switch (c.kind) {
    case ConstraintKind::kInterferenceCoupling: {
      for (int k = 0; k < s_.num_bands; ++k) {
        const BandEval e = band_eval(x, k);
        const Eigen::VectorXd gu = grad_u(k);
        H += coef * (-p_.interference_costs[k] * e.u * normal_pdf(e.u)) * gu * gu.transpose();
      }
      return;
    }
    case ConstraintKind::kFalseAlarm: {
      if (fixed_radio_ >= 0 || q_beta_[c.band] == 0.0) return;
      const BandEval e = band_eval(x, c.band);
      const double s = q_beta_[c.band] * std::sqrt(2.0 * M);
      for (int a = 0; a < s_.num_radios; ++a) {
        for (int b = 0; b < s_.num_radios; ++b) {
          const double P = s * ((a == b ? 1.0 : 0.0) / e.wnorm -
                                e.w[a] * e.w[b] / (e.wnorm * e.wnorm * e.wnorm));
          H(weight_index(c.band, a), weight_index(c.band, b)) += coef * P;
        }
      }
      return;
    }
    case ConstraintKind::kNormalization: {
      for (int n = 0; n < s_.num_radios; ++n) {
        const int idx = weight_index(c.band, n);
        H(idx, idx) += coef * 4.0 * M * nv * (nv + 2.0 * s_.channel_gains(c.band, n));
      }
      return;
    }
    default:
      return;  // affine
  }
}

Eigen::VectorXd ConvexProgram::all_constraints(const Eigen::VectorXd& x) const {
  Eigen::VectorXd h(num_constraints());
  for (int i = 0; i < num_constraints(); ++i) h[i] = constraint_value(i, x);
  return h;
}

TransformedDesign ConvexProgram::decode(const Eigen::VectorXd& x) const {
  TransformedDesign t;
  const int K = s_.num_bands;
  const int N = s_.num_radios;
  t.weights_primed.resize(K, N);
  t.thresholds_primed.resize(K);
  for (int k = 0; k < K; ++k) {
    const BandEval e = band_eval(x, k);
    t.weights_primed.row(k) = e.w.transpose();
    t.thresholds_primed[k] = e.gamma;
  }
  return t;
}

Eigen::VectorXd ConvexProgram::encode(const TransformedDesign& t) const {
  Eigen::VectorXd x(dim_);
  for (int k = 0; k < s_.num_bands; ++k) {
    if (fixed_radio_ < 0) {
      x.segment(k * (s_.num_radios + 1), s_.num_radios) = t.weights_primed.row(k).transpose();
    }
    x[gamma_index(k)] = t.thresholds_primed[k];
  }
  return x;
}

double ConvexProgram::gamma_lower(int band, const Eigen::VectorXd& w) const {
  const double M = s_.samples_per_band;
  const double nv = s_.noise_variance;
  return nv * (M * w.sum() + q_beta_[band] * std::sqrt(2.0 * M) * w.norm());
}

double ConvexProgram::gamma_upper(int band, const Eigen::VectorXd& w) const {
  const double M = s_.samples_per_band;
  const double nv = s_.noise_variance;
  double usig = 0;
  for (int n = 0; n < s_.num_radios; ++n) {
    usig += w[n] * (nv + s_.channel_gains(band, n));
  }
  return M * usig + std::min(0.0, kappa_[band]);
}

std::vector<int> ConvexProgram::zero_gain_bands() const {
  std::vector<int> out;
  for (int k = 0; k < s_.num_bands; ++k) {
    if (s_.channel_gains.row(k).maxCoeff() <= 0.0) out.push_back(k);
  }
  return out;
}

std::vector<int> ConvexProgram::empty_interval_bands() const {
  std::vector<int> out;
  if (fixed_radio_ < 0) return out;
  for (int k = 0; k < s_.num_bands; ++k) {
    const Eigen::VectorXd w = fixed_weights_.row(k).transpose();
    if (!(gamma_lower(k, w) < gamma_upper(k, w))) out.push_back(k);
  }
  return out;
}

std::optional<Eigen::VectorXd> ConvexProgram::try_strictly_feasible() const {
  const int K = s_.num_bands;
  const int N = s_.num_radios;
  Eigen::VectorXd x(dim_);
  Eigen::MatrixXd W(K, N);
  for (int k = 0; k < K; ++k) {
    Eigen::VectorXd w;
    if (fixed_radio_ >= 0) {
      w = fixed_weights_.row(k).transpose();
    } else {
      w = Eigen::VectorXd::Constant(N, 1.0 / N);
      const double mu = fused_scale(s_, w, k);
      w *= kConeMargin / mu;
      x.segment(k * (N + 1), N) = w;
    }
    if (!(gamma_lower(k, w) < gamma_upper(k, w))) return std::nullopt;
    W.row(k) = w.transpose();
  }
  static const double kFracs[] = {0.5,  0.35, 0.25, 0.15, 0.1,   0.07,
                                  0.05, 0.03, 0.02, 0.01, 0.005, 0.002};
  for (double frac : kFracs) {
    for (int k = 0; k < K; ++k) {
      const Eigen::VectorXd w = W.row(k).transpose();
      const double lo = gamma_lower(k, w);
      const double hi = gamma_upper(k, w);
      x[gamma_index(k)] = lo + frac * (hi - lo);
    }
    if (all_constraints(x).maxCoeff() < -kStrictTol) return x;
  }
  return std::nullopt;
}

std::vector<int> ConvexProgram::soft_constraint_indices() const {
  std::vector<int> out;
  for (int i = 0; i < num_constraints(); ++i) {
    switch (info_[i].kind) {
      case ConstraintKind::kInterferenceCoupling:
      case ConstraintKind::kFalseAlarm:
      case ConstraintKind::kMiss:
        out.push_back(i);
        break;
      default:
        break;
    }
  }
  return out;
}

std::vector<int> ConvexProgram::hard_constraint_indices() const {
  std::vector<int> out;
  for (int i = 0; i < num_constraints(); ++i) {
    switch (info_[i].kind) {
      case ConstraintKind::kRegionLower:
      case ConstraintKind::kRegionUpper:
      case ConstraintKind::kNormalization:
      case ConstraintKind::kNonnegativity:
        out.push_back(i);
        break;
      default:
        break;
    }
  }
  return out;
}

}  // namespace specsense
