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

#include "softarm/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "softarm/box_qp.hpp"

namespace softarm {

namespace {

constexpr double kGradThreshold = 1e-9;  // step accepted on a flat model
constexpr double kStepDecrease = 0.5;    // reg decreased above this step
constexpr double kStepIncrease = 0.01;   // reg increased at or below this step

struct Workspace {
  int N = 0;
  int nx = 0;
  std::vector<Eigen::VectorXd> xs, us, xs_try, us_try;
  std::vector<Eigen::VectorXd> fs;  // N+1 rollout gaps
  std::vector<ActionDerivatives> d;
  std::vector<Eigen::VectorXd> Vx, Qx, Qu, k;
  std::vector<Eigen::MatrixXd> Vxx, Qxx, Qxu, Quu, K;
  double cost = 0.0;
  double cost_try = 0.0;
  double dg = 0.0, dq = 0.0;  // expected-improvement accumulators
  bool feasible = false;
};

bool node_has_box(const ShootingProblem& problem, int t) {
  return !problem.bounds.empty() && problem.bounds[t].has_value();
}

double gap_inf_norm(const std::vector<Eigen::VectorXd>& fs) {
  double g = 0.0;
  for (const auto& f : fs) g = std::max(g, f.lpNorm<Eigen::Infinity>());
  return g;
}

// Evaluates cost and gaps of the current candidate.
bool recompute_rollout(const ShootingProblem& problem, Workspace& ws) {
  ws.fs[0] = problem.x0 - ws.xs[0];
  double cost = 0.0;
  Eigen::VectorXd xnext;
  double c = 0.0;
  for (int t = 0; t < ws.N; ++t) {
    problem.nodes[t]->calc(ws.xs[t], ws.us[t], xnext, c);
    ws.fs[t + 1] = xnext - ws.xs[t + 1];
    cost += c;
    if (!std::isfinite(cost) || !xnext.allFinite()) return false;
  }
  cost += problem.terminal->calc(ws.xs[ws.N]);
  if (!std::isfinite(cost)) return false;
  ws.cost = cost;
  return true;
}

bool backward_pass(const ShootingProblem& problem, Workspace& ws, double reg,
                   SolverAlgorithm algorithm) {
  const int N = ws.N;
  problem.terminal->calc_diff(ws.xs[N], ws.Vx[N], ws.Vxx[N]);
  ws.Vxx[N].diagonal().array() += reg;
  if (!ws.feasible) ws.Vx[N] += ws.Vxx[N] * ws.fs[N];

  for (int t = N - 1; t >= 0; --t) {
    const ActionDerivatives& dt = ws.d[t];
    const Eigen::MatrixXd fxT_vxx = dt.fx.transpose() * ws.Vxx[t + 1];
    ws.Qxx[t] = dt.lxx + fxT_vxx * dt.fx;
    ws.Qxu[t] = dt.lxu + fxT_vxx * dt.fu;
    ws.Quu[t] = dt.luu + dt.fu.transpose() * ws.Vxx[t + 1] * dt.fu;
    ws.Qx[t] = dt.lx + dt.fx.transpose() * ws.Vx[t + 1];
    ws.Qu[t] = dt.lu + dt.fu.transpose() * ws.Vx[t + 1];
    ws.Quu[t].diagonal().array() += reg;

    if (algorithm == SolverAlgorithm::kBoxFddp && node_has_box(problem, t)) {
      const ControlBounds& b = *problem.bounds[t];
      BoxQpResult qp = box_qp(ws.Quu[t], ws.Qu[t], b.lb - ws.us[t],
                              b.ub - ws.us[t], ws.k[t]);
      if (!qp.success) return false;
      ws.k[t] = qp.x;
      ws.K[t].setZero();
      const int nf = static_cast<int>(qp.free_set.size());
      if (nf > 0) {
        Eigen::MatrixXd qux_free(nf, ws.nx);
        for (int a = 0; a < nf; ++a) {
          qux_free.row(a) = ws.Qxu[t].col(qp.free_set[a]).transpose();
        }
        const Eigen::MatrixXd kfree = -qp.free_llt.solve(qux_free);
        for (int a = 0; a < nf; ++a) ws.K[t].row(qp.free_set[a]) = kfree.row(a);
        // zero the clamped entries of Qu so the improvement model and the
        // stopping measure only see the free subspace
        for (int c : qp.clamped_set) ws.Qu[t][c] = 0.0;
      } else {
        ws.Qu[t].setZero();
      }
    } else {
      const Eigen::LLT<Eigen::MatrixXd> llt = ws.Quu[t].llt();
      if (llt.info() != Eigen::Success) return false;
      ws.k[t] = -llt.solve(ws.Qu[t]);
      ws.K[t] = -llt.solve(ws.Qxu[t].transpose());
    }

    ws.Vx[t] = ws.Qx[t] + ws.K[t].transpose() * (ws.Quu[t] * ws.k[t]) +
               2.0 * ws.K[t].transpose() * ws.Qu[t];
    ws.Vxx[t] = ws.Qxx[t] + ws.Qxu[t] * ws.K[t];
    ws.Vxx[t] = 0.5 * (ws.Vxx[t] + ws.Vxx[t].transpose()).eval();
    ws.Vxx[t].diagonal().array() += reg;
    if (!ws.Vx[t].allFinite() || !ws.Vxx[t].allFinite()) return false;
    if (!ws.feasible) ws.Vx[t] += ws.Vxx[t] * ws.fs[t];
  }
  return true;
}

// Linear (dg) and quadratic (dq) coefficients of the expected cost change,
// including the feasibility terms for infeasible iterates.
void update_expected_improvement(Workspace& ws) {
  ws.dg = 0.0;
  ws.dq = 0.0;
  if (!ws.feasible) {
    ws.dg -= ws.Vx[ws.N].dot(ws.fs[ws.N]);
    ws.dq += ws.fs[ws.N].dot(ws.Vxx[ws.N] * ws.fs[ws.N]);
  }
  for (int t = 0; t < ws.N; ++t) {
    ws.dg -= ws.Qu[t].dot(ws.k[t]);
    ws.dq -= ws.k[t].dot(ws.Quu[t] * ws.k[t]);
    if (!ws.feasible) {
      ws.dg -= ws.Vx[t].dot(ws.fs[t]);
      ws.dq += ws.fs[t].dot(ws.Vxx[t] * ws.fs[t]);
    }
  }
}

// Completes (d0, d1) with the terms that depend on the trial trajectory.
void expected_improvement(const Workspace& ws, double& d0, double& d1) {
  double dv = 0.0;
  if (!ws.feasible) {
    for (int t = 0; t <= ws.N; ++t) {
      const Eigen::VectorXd dx = ws.xs_try[t] - ws.xs[t];
      dv -= ws.fs[t].dot(ws.Vxx[t] * dx);
    }
  }
  d0 = ws.dg + dv;
  d1 = ws.dq - 2.0 * dv;
}

bool forward_pass(const ShootingProblem& problem, Workspace& ws, double alpha,
                  SolverAlgorithm algorithm) {
  ws.cost_try = 0.0;
  if (!ws.feasible) {
    ws.xs_try[0] = problem.x0 - (1.0 - alpha) * ws.fs[0];
  } else {
    ws.xs_try[0] = problem.x0;
  }
  Eigen::VectorXd xnext;
  double c = 0.0;
  for (int t = 0; t < ws.N; ++t) {
    ws.us_try[t] = ws.us[t] + alpha * ws.k[t] +
                   ws.K[t] * (ws.xs_try[t] - ws.xs[t]);
    if (algorithm == SolverAlgorithm::kBoxFddp && node_has_box(problem, t)) {
      const ControlBounds& b = *problem.bounds[t];
      ws.us_try[t] = ws.us_try[t].cwiseMax(b.lb).cwiseMin(b.ub);
    }
    if (!ws.us_try[t].allFinite()) return false;
    problem.nodes[t]->calc(ws.xs_try[t], ws.us_try[t], xnext, c);
    ws.cost_try += c;
    if (!ws.feasible) {
      ws.xs_try[t + 1] = xnext - (1.0 - alpha) * ws.fs[t + 1];
    } else {
      ws.xs_try[t + 1] = xnext;
    }
    if (!std::isfinite(ws.cost_try) || !ws.xs_try[t + 1].allFinite()) {
      return false;
    }
  }
  ws.cost_try += problem.terminal->calc(ws.xs_try[ws.N]);
  return std::isfinite(ws.cost_try);
}

}  // namespace

bool ShootingProblem::has_bounds() const {
  for (const auto& b : bounds) {
    if (b.has_value()) return true;
  }
  return false;
}

void ShootingProblem::validate() const {
  if (nodes.empty()) throw std::invalid_argument("problem: empty horizon");
  if (!terminal) throw std::invalid_argument("problem: missing terminal cost");
  const int nx = nodes.front()->nx();
  if (x0.size() != nx) throw std::invalid_argument("problem: bad x0 size");
  if (!x0.allFinite()) throw std::invalid_argument("problem: non-finite x0");
  for (const auto& node : nodes) {
    if (!node) throw std::invalid_argument("problem: null node");
    if (node->nx() != nx) {
      throw std::invalid_argument("problem: inconsistent state dimensions");
    }
  }
  if (terminal->nx() != nx) {
    throw std::invalid_argument("problem: terminal dimension mismatch");
  }
  if (!bounds.empty() && static_cast<int>(bounds.size()) != horizon()) {
    throw std::invalid_argument("problem: bounds size must match horizon");
  }
  for (int t = 0; t < static_cast<int>(bounds.size()); ++t) {
    if (!bounds[t]) continue;
    if (bounds[t]->lb.size() != nodes[t]->nu() ||
        bounds[t]->ub.size() != nodes[t]->nu()) {
      throw std::invalid_argument("problem: bounds dimension mismatch");
    }
    if ((bounds[t]->ub.array() < bounds[t]->lb.array()).any()) {
      throw std::invalid_argument("problem: lower bound above upper bound");
    }
  }
}

void SolverSettings::validate() const {
  if (max_iterations < 1 || n_alphas < 1 || stop_tolerance <= 0.0 ||
      gap_tolerance <= 0.0 || reg_init <= 0.0 || reg_min <= 0.0 ||
      reg_max <= 0.0 || reg_factor <= 1.0 || armijo_threshold <= 0.0 ||
      armijo_threshold >= 1.0 || negstep_threshold <= 0.0) {
    throw std::invalid_argument("solver settings: values out of range");
  }
  if (reg_min > reg_max || reg_init < reg_min || reg_init > reg_max) {
    throw std::invalid_argument("solver settings: inconsistent regularization");
  }
}

std::vector<Eigen::VectorXd> compute_gaps(
    const ShootingProblem& problem, const std::vector<Eigen::VectorXd>& xs,
    const std::vector<Eigen::VectorXd>& us) {
  problem.validate();
  const int N = problem.horizon();
  if (static_cast<int>(xs.size()) != N + 1 ||
      static_cast<int>(us.size()) != N) {
    throw std::invalid_argument("compute_gaps: bad trajectory sizes");
  }
  std::vector<Eigen::VectorXd> fs(N + 1);
  fs[0] = problem.x0 - xs[0];
  Eigen::VectorXd xnext;
  double c = 0.0;
  for (int t = 0; t < N; ++t) {
    problem.nodes[t]->calc(xs[t], us[t], xnext, c);
    fs[t + 1] = xnext - xs[t + 1];
  }
  return fs;
}

DdpSolver::DdpSolver(SolverSettings settings) : settings_(std::move(settings)) {
  settings_.validate();
}

Solution DdpSolver::solve(const ShootingProblem& problem,
                          std::vector<Eigen::VectorXd> xs_init,
                          std::vector<Eigen::VectorXd> us_init) {
  problem.validate();
  if (settings_.algorithm == SolverAlgorithm::kFddp && problem.has_bounds()) {
    throw std::invalid_argument(
        "control bounds require the box-constrained algorithm");
  }

  Workspace ws;
  ws.N = problem.horizon();
  ws.nx = problem.nodes.front()->nx();

  if (xs_init.empty()) {
    xs_init.assign(ws.N + 1, problem.x0);
  }
  if (us_init.empty()) {
    us_init.resize(ws.N);
    for (int t = 0; t < ws.N; ++t) {
      us_init[t] = Eigen::VectorXd::Zero(problem.nodes[t]->nu());
    }
  }
  if (static_cast<int>(xs_init.size()) != ws.N + 1 ||
      static_cast<int>(us_init.size()) != ws.N) {
    throw std::invalid_argument("solve: bad warm-start sizes");
  }
  ws.xs = std::move(xs_init);
  ws.us = std::move(us_init);
  ws.xs_try.assign(ws.N + 1, Eigen::VectorXd::Zero(ws.nx));
  ws.us_try.resize(ws.N);
  ws.fs.assign(ws.N + 1, Eigen::VectorXd::Zero(ws.nx));
  ws.d.resize(ws.N);
  ws.Vx.assign(ws.N + 1, Eigen::VectorXd::Zero(ws.nx));
  ws.Vxx.assign(ws.N + 1, Eigen::MatrixXd::Zero(ws.nx, ws.nx));
  ws.Qx.resize(ws.N);
  ws.Qu.resize(ws.N);
  ws.Qxx.resize(ws.N);
  ws.Qxu.resize(ws.N);
  ws.Quu.resize(ws.N);
  ws.k.resize(ws.N);
  ws.K.resize(ws.N);
  for (int t = 0; t < ws.N; ++t) {
    const int nu = problem.nodes[t]->nu();
    ws.us_try[t] = Eigen::VectorXd::Zero(nu);
    ws.k[t] = Eigen::VectorXd::Zero(nu);
    ws.K[t] = Eigen::MatrixXd::Zero(nu, ws.nx);
  }
  ws.feasible = false;

  Solution sol;
  auto fill_solution = [&](bool converged, int iterations, double reg,
                           double expected) {
    sol.xs = ws.xs;
    sol.us = ws.us;
    sol.gains.k = ws.k;
    sol.gains.K = ws.K;
    sol.converged = converged;
    sol.iterations = iterations;
    sol.final_cost = ws.cost;
    sol.final_gap_norm = gap_inf_norm(ws.fs);
    sol.final_regularization = reg;
    sol.expected_improvement = expected;
    return sol;
  };

  double reg = settings_.reg_init;
  const double alpha_min = std::pow(2.0, -(settings_.n_alphas - 1));

  if (!recompute_rollout(problem, ws)) {
    return fill_solution(false, 0, reg, std::numeric_limits<double>::infinity());
  }

  double steplength = 0.0;
  for (int iter = 0; iter < settings_.max_iterations; ++iter) {
    for (int t = 0; t < ws.N; ++t) {
      problem.nodes[t]->calc_diff(ws.xs[t], ws.us[t], ws.d[t]);
    }

    bool backward_ok = backward_pass(problem, ws, reg, settings_.algorithm);
    while (!backward_ok) {
      if (reg >= settings_.reg_max) {
        return fill_solution(false, iter + 1, reg,
                             std::numeric_limits<double>::infinity());
      }
      reg = std::min(reg * settings_.reg_factor, settings_.reg_max);
      backward_ok = backward_pass(problem, ws, reg, settings_.algorithm);
    }

    update_expected_improvement(ws);
    const double gap_inf = gap_inf_norm(ws.fs);
    const double expected_at_min =
        std::abs(alpha_min * (ws.dg + 0.5 * alpha_min * ws.dq));
    if (expected_at_min <= settings_.stop_tolerance &&
        gap_inf <= settings_.gap_tolerance) {
      if (settings_.on_iteration) {
        IterationRecord rec;
        rec.iteration = iter;
        rec.cost = ws.cost;
        rec.step_length = 0.0;
        rec.regularization = reg;
        rec.gap_inf_norm = gap_inf;
        rec.expected_improvement = expected_at_min;
        rec.xs = &ws.xs;
        rec.us = &ws.us;
        settings_.on_iteration(rec);
      }
      return fill_solution(true, iter + 1, reg, expected_at_min);
    }

    bool accepted = false;
    double alpha = 1.0;
    for (int a = 0; a < settings_.n_alphas; ++a, alpha *= 0.5) {
      if (!forward_pass(problem, ws, alpha, settings_.algorithm)) continue;
      double d0 = 0.0, d1 = 0.0;
      expected_improvement(ws, d0, d1);
      const double dv = ws.cost - ws.cost_try;
      const double dv_expected = alpha * (d0 + 0.5 * alpha * d1);
      bool ok = false;
      if (dv_expected >= 0.0) {
        ok = d0 < kGradThreshold || dv > settings_.armijo_threshold * dv_expected;
      } else {
        // the model predicts a cost increase while closing gaps; accept
        // bounded deterioration
        ok = dv > settings_.negstep_threshold * dv_expected;
      }
      if (ok) {
        ws.xs.swap(ws.xs_try);
        ws.us.swap(ws.us_try);
        ws.cost = ws.cost_try;
        ws.feasible = ws.feasible || alpha == 1.0;
        steplength = alpha;
        accepted = true;
        break;
      }
    }

    if (!recompute_rollout(problem, ws)) {
      return fill_solution(false, iter + 1, reg,
                           std::numeric_limits<double>::infinity());
    }

    if (settings_.on_iteration) {
      IterationRecord rec;
      rec.iteration = iter;
      rec.cost = ws.cost;
      rec.step_length = accepted ? steplength : 0.0;
      rec.regularization = reg;
      rec.gap_inf_norm = gap_inf_norm(ws.fs);
      rec.expected_improvement = expected_at_min;
      rec.xs = &ws.xs;
      rec.us = &ws.us;
      settings_.on_iteration(rec);
    }

    if (accepted && steplength > kStepDecrease) {
      reg = std::max(reg / settings_.reg_factor, settings_.reg_min);
    }
    if (!accepted || steplength <= kStepIncrease) {
      if (reg >= settings_.reg_max) {
        return fill_solution(false, iter + 1, reg, expected_at_min);
      }
      reg = std::min(reg * settings_.reg_factor, settings_.reg_max);
    }
  }
  return fill_solution(false, settings_.max_iterations, reg,
                       std::numeric_limits<double>::infinity());
}

}  // namespace softarm
