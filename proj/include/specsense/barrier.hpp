// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <vector>

#include "specsense/program.hpp"

namespace specsense {

struct BarrierOptions {
  double barrier_init = 1.0;        // initial barrier weight tau
  double barrier_decrease = 0.1;    // geometric factor per outer stage
  double inner_gradient_tol = 1e-8; // Newton stop on ||grad||
  double duality_gap_tol = 1e-8;    // stop outer loop when m * tau <= this
  double kkt_tol = 1e-6;            // stationarity norm required to declare convergence
  int max_iterations = 500;         // total Newton steps across all stages
  double armijo_slope = 1e-4;
  double backtrack_factor = 0.5;
  double feasibility_tol = 1e-8;    // exact-metric feasibility slack
  bool paper_compat = false;        // use the literal sv*Qinv(1-alpha) miss bound
};

struct BarrierSolution {
  Eigen::VectorXd x;
  double kkt_residual = 0;  // ||grad of the final barrier subproblem||
  int iterations = 0;       // Newton steps (phase-I included)
  bool converged = false;
  bool feasible_point_found = false;
  // When no strictly feasible point exists: indices of constraints that the
  // phase-I optimum could not pull strictly negative.
  std::vector<int> violated_constraints;
};

/// Log-barrier objective -obj(x) - tau * sum log(-h_i(x)) and its gradient;
/// +inf outside the strictly feasible set.
double barrier_value(const ConvexProgram& prog, const Eigen::VectorXd& x, double tau);
Eigen::VectorXd barrier_gradient(const ConvexProgram& prog, const Eigen::VectorXd& x, double tau);

/// Interior-point solve: strictly feasible start (slide or phase-I), then
/// damped Newton on the barrier subproblem with Armijo backtracking while
/// tau decreases geometrically until m * tau <= duality_gap_tol.
BarrierSolution solve_barrier(const ConvexProgram& prog, const BarrierOptions& opt);

}  // namespace specsense
