// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "specsense/barrier.hpp"
#include "specsense/program.hpp"
#include "specsense/types.hpp"

namespace specsense {

/// Outcome of a joint or single-radio solve. Feasibility is always judged by
/// the exact fused metrics, never by the surrogate.
struct SolverReport {
  FusionDesign design;            // canonical: max_n w_k(n) = 1 per band
  DetectionMetrics exact;         // exact metrics of the recovered design
  double surrogate_objective = 0; // sum r_k (1 - g_k) at the solver point
  double true_objective = 0;      // exact throughput (0 when infeasible)

  Eigen::VectorXd miss_residuals;        // pm - alpha
  Eigen::VectorXd false_alarm_residuals; // pf - beta
  double interference_residual = 0;      // c'pm - eps

  double kkt_residual = 0;
  int iterations = 0;
  bool converged = false;   // barrier converged and design exactly feasible
  bool feasible = false;    // exact metrics within feasibility_tol
  std::vector<std::string> binding_constraints;
  std::vector<int> infeasible_bands;  // per-band diagnosis when infeasible
  std::string failure_reason;
};

/// Solves the convex reformulation over all weights and thresholds and
/// evaluates the recovered design with the exact metrics.
SolverReport solve_p2(const SensingScenario& s, const PolicyConstraints& p,
                      const BarrierOptions& opt = {});

/// Same program with weights pinned to radio `radio` (thresholds free).
SolverReport solve_baseline_single_radio(const SensingScenario& s, const PolicyConstraints& p,
                                         int radio, const BarrierOptions& opt = {});

/// Shared back end: solve an already-built program.
SolverReport solve_program(const ConvexProgram& prog, const BarrierOptions& opt);

}  // namespace specsense
