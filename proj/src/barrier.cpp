// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#include "specsense/barrier.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace specsense {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Solves H d = -g with increasing Tikhonov regularization until d is a
// descent direction.
Eigen::VectorXd descent_direction(Eigen::MatrixXd H, const Eigen::VectorXd& g) {
  const int n = static_cast<int>(g.size());
  double lambda = 0.0;
  for (int attempt = 0; attempt < 40; ++attempt) {
    Eigen::MatrixXd Hreg = H;
    if (lambda > 0) Hreg.diagonal().array() += lambda;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(Hreg);
    if (ldlt.info() == Eigen::Success) {
      Eigen::VectorXd d = ldlt.solve(-g);
      if (d.allFinite() && g.dot(d) < 0) return d;
    }
    lambda = (lambda == 0.0) ? 1e-10 * (1.0 + H.diagonal().cwiseAbs().maxCoeff()) : lambda * 10.0;
  }
  return -g;
}

struct LineSearchResult {
  Eigen::VectorXd x;
  double f;
  double step;
};

template <typename F>
LineSearchResult backtrack(const F& value, const Eigen::VectorXd& x0, double f0,
                           const Eigen::VectorXd& d, double slope, double armijo,
                           double factor) {
  double step = 1.0;
  for (int i = 0; i < 80; ++i) {
    Eigen::VectorXd xn = x0 + step * d;
    const double fn = value(xn);
    if (std::isfinite(fn) && fn <= f0 + armijo * step * slope) {
      return {std::move(xn), fn, step};
    }
    step *= factor;
  }
  return {x0, f0, 0.0};
}
}  // namespace

double barrier_value(const ConvexProgram& prog, const Eigen::VectorXd& x, double tau) {
  const Eigen::VectorXd h = prog.all_constraints(x);
  if (h.maxCoeff() >= 0.0) return kInf;
  return -prog.objective(x) - tau * (-h.array()).log().sum();
}

Eigen::VectorXd barrier_gradient(const ConvexProgram& prog, const Eigen::VectorXd& x,
                                 double tau) {
  Eigen::VectorXd g = -prog.objective_gradient(x);
  for (int i = 0; i < prog.num_constraints(); ++i) {
    const double h = prog.constraint_value(i, x);
    g += (tau / -h) * prog.constraint_gradient(i, x);
  }
  return g;
}

namespace {

Eigen::MatrixXd barrier_hessian(const ConvexProgram& prog, const Eigen::VectorXd& x,
                                double tau) {
  Eigen::MatrixXd H = -prog.objective_hessian(x);
  for (int i = 0; i < prog.num_constraints(); ++i) {
    const double h = prog.constraint_value(i, x);
    const Eigen::VectorXd gh = prog.constraint_gradient(i, x);
    H += (tau / (h * h)) * gh * gh.transpose();
    prog.add_constraint_hessian(i, x, tau / -h, H);
  }
  return H;
}

// Newton descent on one barrier subproblem. Returns the gradient norm at exit.
double center(const ConvexProgram& prog, Eigen::VectorXd& x, double tau,
              const BarrierOptions& opt, int& iterations) {
  double gnorm = kInf;
  while (iterations < opt.max_iterations) {
    const Eigen::VectorXd g = barrier_gradient(prog, x, tau);
    gnorm = g.norm();
    if (gnorm <= opt.inner_gradient_tol) break;
    const Eigen::MatrixXd H = barrier_hessian(prog, x, tau);
    const Eigen::VectorXd d = descent_direction(H, g);
    const double slope = g.dot(d);
    if (-slope < 1e-18) break;  // stationary to numerical precision
    const double f0 = barrier_value(prog, x, tau);
    auto value = [&](const Eigen::VectorXd& xn) { return barrier_value(prog, xn, tau); };
    LineSearchResult ls =
        backtrack(value, x, f0, d, slope, opt.armijo_slope, opt.backtrack_factor);
    ++iterations;
    if (ls.step == 0.0) break;  // no progress possible
    x = std::move(ls.x);
  }
  return gnorm;
}

// Phase-I: minimize s subject to soft_i(x) <= s with the domain constraints
// kept as hard barriers. Succeeds as soon as max soft violation < -margin.
struct PhaseOneResult {
  bool feasible = false;
  Eigen::VectorXd x;
  std::vector<int> violated;
  int iterations = 0;
};

PhaseOneResult phase_one(const ConvexProgram& prog, const BarrierOptions& opt) {
  PhaseOneResult result;
  const std::vector<int> soft = prog.soft_constraint_indices();
  const std::vector<int> hard = prog.hard_constraint_indices();
  const int n = prog.dim();
  constexpr double kMargin = 1e-9;

  // Region-interior start regardless of soft violations.
  Eigen::VectorXd x;
  {
    // Reuse the slide with the most conservative fraction: build from decode of
    // a fresh interior guess. The slide itself may fail on soft constraints, so
    // assemble manually: uniform weights inside the cone, mid-interval gammas.
    auto seed = prog.try_strictly_feasible();
    if (seed.has_value()) {
      result.feasible = true;
      result.x = std::move(*seed);
      return result;
    }
    // Manual region-interior point (soft constraints may be violated).
    const SensingScenario& s = prog.scenario();
    const int K = s.num_bands;
    const int N = s.num_radios;
    x.resize(n);
    for (int k = 0; k < K; ++k) {
      Eigen::VectorXd w;
      if (prog.weights_fixed()) {
        // fixed weights live inside the program; only gamma is free
        w = prog.decode(Eigen::VectorXd::Zero(n)).weights_primed.row(k).transpose();
      } else {
        w = Eigen::VectorXd::Constant(N, 1.0 / N);
        w *= 0.995 / fused_scale(s, w, k);
        x.segment(k * (N + 1), N) = w;
      }
      const double M = s.samples_per_band;
      const double nv = s.noise_variance;
      double usig = 0;
      for (int nn = 0; nn < N; ++nn) usig += w[nn] * (nv + s.channel_gains(k, nn));
      const double lo = nv * M * w.sum();
      const double hi = M * usig;
      const int gi = prog.weights_fixed() ? k : k * (N + 1) + N;
      if (!(lo < hi)) {  // no region interior (zero-gain band)
        result.violated = prog.zero_gain_bands();
        return result;
      }
      x[gi] = 0.5 * (lo + hi);
    }
  }

  // Variables z = (x, s).
  double s0 = -kInf;
  for (int i : soft) s0 = std::max(s0, prog.constraint_value(i, x));
  double sv = s0 + std::max(1.0, 0.1 * std::abs(s0));

  auto soft_max = [&](const Eigen::VectorXd& xx) {
    double m = -kInf;
    for (int i : soft) m = std::max(m, prog.constraint_value(i, xx));
    return m;
  };

  double tau = opt.barrier_init;
  const int m = static_cast<int>(soft.size() + hard.size());
  while (tau * m > opt.duality_gap_tol && result.iterations < opt.max_iterations) {
    for (; result.iterations < opt.max_iterations;) {
      if (soft_max(x) < -kMargin) {
        result.feasible = true;
        result.x = x;
        return result;
      }
      // gradient and Hessian in (x, s)
      Eigen::VectorXd g = Eigen::VectorXd::Zero(n + 1);
      Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n + 1, n + 1);
      g[n] = 1.0;
      for (int i : soft) {
        const double gap = sv - prog.constraint_value(i, x);  // > 0
        Eigen::VectorXd gi(n + 1);
        gi.head(n) = prog.constraint_gradient(i, x);
        gi[n] = -1.0;
        g += (tau / gap) * gi;
        H += (tau / (gap * gap)) * gi * gi.transpose();
        Eigen::MatrixXd Hx = Eigen::MatrixXd::Zero(n, n);
        prog.add_constraint_hessian(i, x, tau / gap, Hx);
        H.topLeftCorner(n, n) += Hx;
      }
      for (int i : hard) {
        const double h = prog.constraint_value(i, x);
        Eigen::VectorXd gi(n + 1);
        gi.head(n) = prog.constraint_gradient(i, x);
        gi[n] = 0.0;
        g += (tau / -h) * gi;
        H += (tau / (h * h)) * gi * gi.transpose();
        Eigen::MatrixXd Hx = Eigen::MatrixXd::Zero(n, n);
        prog.add_constraint_hessian(i, x, tau / -h, Hx);
        H.topLeftCorner(n, n) += Hx;
      }
      if (g.norm() <= opt.inner_gradient_tol) break;
      const Eigen::VectorXd d = descent_direction(H, g);
      const double slope = g.dot(d);
      if (-slope < 1e-18) break;
      auto value = [&](const Eigen::VectorXd& z) {
        const Eigen::VectorXd xx = z.head(n);
        const double ss = z[n];
        double acc = ss;
        for (int i : soft) {
          const double gap = ss - prog.constraint_value(i, xx);
          if (gap <= 0) return kInf;
          acc -= tau * std::log(gap);
        }
        for (int i : hard) {
          const double h = prog.constraint_value(i, xx);
          if (h >= 0) return kInf;
          acc -= tau * std::log(-h);
        }
        return acc;
      };
      Eigen::VectorXd z(n + 1);
      z.head(n) = x;
      z[n] = sv;
      LineSearchResult ls =
          backtrack(value, z, value(z), d, slope, opt.armijo_slope, opt.backtrack_factor);
      ++result.iterations;
      if (ls.step == 0.0) break;
      x = ls.x.head(n);
      sv = ls.x[n];
    }
    tau *= opt.barrier_decrease;
  }
  if (soft_max(x) < -kMargin) {
    result.feasible = true;
    result.x = x;
    return result;
  }
  for (int i : soft) {
    if (prog.constraint_value(i, x) >= -kMargin) result.violated.push_back(i);
  }
  return result;
}

}  // namespace

BarrierSolution solve_barrier(const ConvexProgram& prog, const BarrierOptions& opt) {
  BarrierSolution sol;

  Eigen::VectorXd x;
  auto direct = prog.try_strictly_feasible();
  if (direct.has_value()) {
    x = std::move(*direct);
    sol.feasible_point_found = true;
  } else {
    PhaseOneResult p1 = phase_one(prog, opt);
    sol.iterations += p1.iterations;
    if (!p1.feasible) {
      sol.violated_constraints = std::move(p1.violated);
      return sol;
    }
    x = std::move(p1.x);
    sol.feasible_point_found = true;
  }

  const int m = prog.num_constraints();
  double tau = opt.barrier_init;
  double kkt = kInf;
  while (true) {
    kkt = center(prog, x, tau, opt, sol.iterations);
    if (tau * m <= opt.duality_gap_tol || sol.iterations >= opt.max_iterations) break;
    tau *= opt.barrier_decrease;
  }
  sol.x = std::move(x);
  sol.kkt_residual = kkt;
  sol.converged = (tau * m <= opt.duality_gap_tol) && (kkt <= opt.kkt_tol) &&
                  (sol.iterations < opt.max_iterations);
  return sol;
}

}  // namespace specsense
