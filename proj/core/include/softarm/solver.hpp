/*
 Copyright 2026 The softarm authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef SOFTARM_SOLVER_HPP_
#define SOFTARM_SOLVER_HPP_

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "softarm/action.hpp"

namespace softarm {

struct ControlBounds {
  Eigen::VectorXd lb, ub;
};

/// Multiple-shooting optimal control problem over N nodes plus a terminal
/// cost. `bounds` is either empty (unconstrained) or one optional box per
/// node; infinite entries disable individual coordinates.
struct ShootingProblem {
  Eigen::VectorXd x0;
  std::vector<std::shared_ptr<const ActionModel>> nodes;
  std::shared_ptr<const TerminalCost> terminal;
  std::vector<std::optional<ControlBounds>> bounds;

  int horizon() const { return static_cast<int>(nodes.size()); }
  bool has_bounds() const;
  void validate() const;
};

enum class SolverAlgorithm {
  kFddp,     // gap-tolerant DDP; rejects problems with control bounds
  kBoxFddp,  // same search, box-QP feedforward at bounded nodes
};

struct IterationRecord {
  int iteration = 0;
  double cost = 0.0;
  double step_length = 0.0;
  double regularization = 0.0;
  double gap_inf_norm = 0.0;
  double expected_improvement = 0.0;
  const std::vector<Eigen::VectorXd>* xs = nullptr;
  const std::vector<Eigen::VectorXd>* us = nullptr;
};

struct SolverSettings {
  SolverAlgorithm algorithm = SolverAlgorithm::kBoxFddp;
  int max_iterations = 500;
  double stop_tolerance = 1e-9;  // on |expected improvement at alpha_min|
  double gap_tolerance = 1e-9;   // on the gap infinity norm
  double reg_init = 1e-9;
  double reg_min = 1e-9;
  double reg_max = 1e9;
  double reg_factor = 10.0;
  double armijo_threshold = 0.1;   // fraction of the model decrease to accept
  double negstep_threshold = 2.0;  // acceptance window for ascent models
  int n_alphas = 11;               // step lengths 1, 1/2, ..., 2^-(n-1)
  std::function<void(const IterationRecord&)> on_iteration;

  void validate() const;
};

struct SolverGains {
  std::vector<Eigen::VectorXd> k;  // feedforward, per node
  std::vector<Eigen::MatrixXd> K;  // feedback, per node (nu x nx)
};

struct Solution {
  std::vector<Eigen::VectorXd> xs;  // N+1 states
  std::vector<Eigen::VectorXd> us;  // N controls
  SolverGains gains;
  bool converged = false;
  int iterations = 0;
  double final_cost = 0.0;
  double final_gap_norm = 0.0;
  double final_regularization = 0.0;
  double expected_improvement = 0.0;  // model decrease at alpha_min on exit
};

/// Rollout mismatches: gaps[0] = x0 - xs[0], gaps[k+1] = f(xs[k], us[k]) -
/// xs[k+1]. All zero iff (xs, us) is dynamically feasible from x0.
std::vector<Eigen::VectorXd> compute_gaps(
    const ShootingProblem& problem, const std::vector<Eigen::VectorXd>& xs,
    const std::vector<Eigen::VectorXd>& us);

/// Feasibility-driven DDP with optional control boxes. Accepts infeasible
/// warm starts (default: xs pinned at x0, us zero) and contracts the rollout
/// gaps jointly with the cost. Never throws on numerical failure; returns
/// converged = false instead.
class DdpSolver {
 public:
  explicit DdpSolver(SolverSettings settings = SolverSettings());

  Solution solve(const ShootingProblem& problem,
                 std::vector<Eigen::VectorXd> xs_init = {},
                 std::vector<Eigen::VectorXd> us_init = {});

  const SolverSettings& settings() const { return settings_; }

 private:
  SolverSettings settings_;
};

}  // namespace softarm

#endif  // SOFTARM_SOLVER_HPP_
