// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "specsense/surrogate.hpp"
#include "specsense/types.hpp"

namespace specsense {

/// Constraint families of the convex throughput-maximization program in
/// primed variables (w', gamma').
enum class ConstraintKind {
  kInterferenceCoupling,  // 1'c - sum_k c_k Q(u_k) - eps <= 0
  kFalseAlarm,            // Qinv(beta_k) sqrt(2M w'w) - t_k <= 0
  kMiss,                  // u_k - kappa_k <= 0 (kappa_k = Qinv(1 - alpha_k))
  kRegionLower,           // sv2 M 1'w - gamma <= 0   (t_k >= 0)
  kRegionUpper,           // u_k <= 0
  kNormalization,         // 2 M sv2 w'A_k w - 1 <= 0 (mu_k <= 1)
  kNonnegativity,         // -w_{k,n} <= 0
};

struct ConstraintInfo {
  ConstraintKind kind;
  int band;   // -1 for the coupling constraint
  int radio;  // only meaningful for kNonnegativity
};

/// Convex program
///
///   max  sum_k r_k [1 - g_k(gamma'_k, w'_k)]
///   s.t. the families above,
///
/// with t_k = gamma'_k/sv2 - M 1'w'_k and u_k = gamma'_k - M(sv2 1 + G_k)'w'_k.
/// The objective is concave and every constraint convex on the region
/// t_k >= 0, u_k <= 0 enforced by the region families. The normalization
/// cone mu_k <= 1 pins the otherwise free joint scale of (w'_k, gamma'_k);
/// scaling a band up improves the surrogate and relaxes the miss and
/// coupling constraints, so the cone is tight at any maximizer and the
/// constraint set then coincides exactly with the feasible designs of the
/// original metrics (evaluated scale-invariantly).
///
/// The miss bound uses kappa_k = Qinv(1 - alpha_k); with paper_compat set it
/// uses sv * Qinv(1 - alpha_k) instead, which coincides when sv2 = 1.
///
/// Internally the objective is divided by max(1, 1'r) so that solver
/// tolerances are scale-free; objective_scale() undoes this.
class ConvexProgram {
 public:
  /// Joint program over all weights and thresholds: K(N+1) variables laid
  /// out per band as [w'_k(0..N-1), gamma'_k]. Rejects instances violating
  /// the cap conditions (throws std::invalid_argument).
  static ConvexProgram joint(const SensingScenario& s, const PolicyConstraints& p,
                             bool paper_compat = false);

  /// Non-cooperative variant: weights fixed to the indicator of one radio
  /// (scaled to mu_k = 1); only the K thresholds are free.
  static ConvexProgram single_radio(const SensingScenario& s, const PolicyConstraints& p,
                                    int radio, bool paper_compat = false);

  int dim() const { return dim_; }
  int num_constraints() const { return static_cast<int>(info_.size()); }
  const ConstraintInfo& constraint_info(int i) const { return info_[i]; }
  int count(ConstraintKind kind) const;

  double objective(const Eigen::VectorXd& x) const;
  Eigen::VectorXd objective_gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd objective_hessian(const Eigen::VectorXd& x) const;
  double objective_scale() const { return obj_scale_; }

  double constraint_value(int i, const Eigen::VectorXd& x) const;
  Eigen::VectorXd constraint_gradient(int i, const Eigen::VectorXd& x) const;
  /// H += coef * hessian(h_i) at x.
  void add_constraint_hessian(int i, const Eigen::VectorXd& x, double coef,
                              Eigen::MatrixXd& H) const;
  Eigen::VectorXd all_constraints(const Eigen::VectorXd& x) const;

  TransformedDesign decode(const Eigen::VectorXd& x) const;
  Eigen::VectorXd encode(const TransformedDesign& t) const;

  /// Deterministic interior start: uniform (or fixed) weight directions just
  /// inside the normalization cone, thresholds slid down the lemma-valid
  /// interval until all constraints hold strictly. Empty if the slide fails
  /// (a feasible point may still exist; see phase-I in the barrier solver).
  std::optional<Eigen::VectorXd> try_strictly_feasible() const;

  /// Constraints treated as soft targets during phase-I (coupling,
  /// false-alarm, miss); the rest are hard domain constraints.
  std::vector<int> soft_constraint_indices() const;
  std::vector<int> hard_constraint_indices() const;

  /// Bands with no channel gain at any radio: the lemma-valid region has no
  /// interior there and the miss cap is unattainable.
  std::vector<int> zero_gain_bands() const;
  /// For the single-radio variant: bands whose threshold interval is empty,
  /// i.e. the fixed radio cannot meet the miss cap at its false-alarm floor.
  std::vector<int> empty_interval_bands() const;

  bool weights_fixed() const { return fixed_radio_ >= 0; }
  int fixed_radio() const { return fixed_radio_; }
  const SensingScenario& scenario() const { return s_; }
  const PolicyConstraints& policy() const { return p_; }
  bool paper_compat() const { return paper_compat_; }

 private:
  ConvexProgram(const SensingScenario& s, const PolicyConstraints& p, int fixed_radio,
                bool paper_compat);

  struct BandEval {
    Eigen::VectorXd w;
    double gamma;
    double t;      // gamma/sv2 - M 1'w
    double u;      // gamma - M (sv2 1 + G_k)'w
    double wnorm;  // ||w||
    double wAw;    // w'[sv2 I + 2 diag(G_k)] w
  };
  BandEval band_eval(const Eigen::VectorXd& x, int band) const;
  int gamma_index(int band) const;
  int weight_index(int band, int radio) const;  // -1 when weights are fixed
  Eigen::VectorXd grad_t(int band) const;
  Eigen::VectorXd grad_u(int band) const;
  // Strict feasibility interval for gamma'_k at fixed weights.
  double gamma_lower(int band, const Eigen::VectorXd& w) const;
  double gamma_upper(int band, const Eigen::VectorXd& w) const;

  SensingScenario s_;
  PolicyConstraints p_;
  int fixed_radio_ = -1;
  bool paper_compat_ = false;
  int dim_ = 0;
  double obj_scale_ = 1.0;
  Eigen::VectorXd smin_;       // sqrt(sv2 + 2 min_n G_k(n)) per band
  Eigen::VectorXd q_beta_;     // Qinv(beta_k)
  Eigen::VectorXd kappa_;      // miss-cap constant per band
  Eigen::MatrixXd fixed_weights_;  // K x N, single-radio variant only
  std::vector<ConstraintInfo> info_;
};

}  // namespace specsense
