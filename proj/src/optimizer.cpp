// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#include "specsense/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specsense/fusion.hpp"

namespace specsense {

namespace {

void diagnose_violations(const ConvexProgram& prog, const std::vector<int>& violated,
                         SolverReport& report) {
  bool budget = false;
  for (int i : violated) {
    const ConstraintInfo& c = prog.constraint_info(i);
    switch (c.kind) {
      case ConstraintKind::kInterferenceCoupling:
        budget = true;
        break;
      case ConstraintKind::kMiss:
      case ConstraintKind::kFalseAlarm:
        report.infeasible_bands.push_back(c.band);
        break;
      default:
        report.infeasible_bands.push_back(c.band);
        break;
    }
  }
  std::sort(report.infeasible_bands.begin(), report.infeasible_bands.end());
  report.infeasible_bands.erase(
      std::unique(report.infeasible_bands.begin(), report.infeasible_bands.end()),
      report.infeasible_bands.end());
  std::ostringstream os;
  os << "no strictly feasible point";
  if (!report.infeasible_bands.empty()) {
    os << "; blocking bands:";
    for (int k : report.infeasible_bands) os << " " << k;
  }
  if (budget) os << "; interference budget unattainable";
  report.failure_reason = os.str();
}

}  // namespace

SolverReport solve_program(const ConvexProgram& prog, const BarrierOptions& opt) {
  SolverReport report;
  const SensingScenario& s = prog.scenario();
  const PolicyConstraints& p = prog.policy();

  // Structural prechecks with conclusive diagnoses.
  if (auto zero = prog.zero_gain_bands(); !zero.empty()) {
    report.infeasible_bands = zero;
    std::ostringstream os;
    os << "bands with no channel gain cannot meet a miss cap below 1/2:";
    for (int k : zero) os << " " << k;
    report.failure_reason = os.str();
    return report;
  }
  if (auto empty = prog.empty_interval_bands(); !empty.empty()) {
    report.infeasible_bands = empty;
    std::ostringstream os;
    os << "fixed radio cannot meet the miss cap at its false-alarm floor on bands:";
    for (int k : empty) os << " " << k;
    report.failure_reason = os.str();
    return report;
  }

  BarrierSolution sol = solve_barrier(prog, opt);
  report.iterations = sol.iterations;
  report.kkt_residual = sol.kkt_residual;
  if (!sol.feasible_point_found) {
    diagnose_violations(prog, sol.violated_constraints, report);
    return report;
  }

  const TransformedDesign primed = prog.decode(sol.x);
  report.design = from_primed(primed);
  report.exact = metrics(s, p, report.design);
  report.surrogate_objective = prog.objective(sol.x) * prog.objective_scale();

  report.miss_residuals = report.exact.pm - p.miss_caps;
  report.false_alarm_residuals = report.exact.pf - p.false_alarm_caps;
  report.interference_residual = report.exact.interference - p.interference_budget;

  const double tol = opt.feasibility_tol;
  report.feasible = (report.miss_residuals.array() <= tol).all() &&
                    (report.false_alarm_residuals.array() <= tol).all() &&
                    report.interference_residual <= tol;
  report.true_objective = report.feasible ? report.exact.throughput : 0.0;
  report.converged = sol.converged && report.feasible;
  if (!sol.converged) report.failure_reason = "barrier solver did not converge";
  if (!report.feasible) report.failure_reason = "recovered design violates exact constraints";

  const double bind_tol = 1e-6;
  for (int k = 0; k < s.num_bands; ++k) {
    std::ostringstream os;
    if (std::abs(report.miss_residuals[k]) <= bind_tol) {
      os << "miss_cap[" << k << "]";
      report.binding_constraints.push_back(os.str());
    } else if (std::abs(report.false_alarm_residuals[k]) <= bind_tol) {
      os << "false_alarm_cap[" << k << "]";
      report.binding_constraints.push_back(os.str());
    }
  }
  if (std::abs(report.interference_residual) <= bind_tol) {
    report.binding_constraints.push_back("interference_budget");
  }
  return report;
}

SolverReport solve_p2(const SensingScenario& s, const PolicyConstraints& p,
                      const BarrierOptions& opt) {
  return solve_program(ConvexProgram::joint(s, p, opt.paper_compat), opt);
}

SolverReport solve_baseline_single_radio(const SensingScenario& s, const PolicyConstraints& p,
                                         int radio, const BarrierOptions& opt) {
  return solve_program(ConvexProgram::single_radio(s, p, radio, opt.paper_compat), opt);
}

}  // namespace specsense
