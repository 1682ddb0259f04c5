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

#include "softarm/costs.hpp"

#include <stdexcept>

namespace softarm {

StateLayout soft_layout(const ChainModel& model, const ActuationSpec& act) {
  StateLayout l;
  l.n = model.n_links();
  l.m = act.n_motors();
  l.nx = 2 * (l.n + l.m);
  l.nu = act.nu();
  l.has_motors = true;
  l.vsa = act.is_vsa();
  return l;
}

StateLayout rigid_layout(const ChainModel& model, const ActuationSpec& act) {
  StateLayout l;
  l.n = model.n_links();
  l.m = act.n_motors();
  l.nx = 2 * l.n;
  l.nu = l.m;
  l.has_motors = false;
  l.vsa = false;
  return l;
}

void CostQuadratic::setZero(int nx, int nu) {
  value = 0.0;
  lx = Eigen::VectorXd::Zero(nx);
  lu = Eigen::VectorXd::Zero(nu);
  lxx = Eigen::MatrixXd::Zero(nx, nx);
  luu = Eigen::MatrixXd::Zero(nu, nu);
  lxu = Eigen::MatrixXd::Zero(nx, nu);
}

namespace {

void check_term(const CostTerm& term, const StateLayout& layout) {
  if (term.weight < 0.0) throw std::invalid_argument("cost weight must be >= 0");
  switch (term.kind) {
    case CostKind::kStateReg:
      if (term.x_ref.size() != layout.nx) {
        throw std::invalid_argument("state regularization: bad x_ref size");
      }
      break;
    case CostKind::kControlReg:
      if (term.u_ref.size() != layout.m) {
        throw std::invalid_argument("control regularization: bad u_ref size");
      }
      break;
    case CostKind::kVsaStiffness:
      if (!layout.vsa) {
        throw std::invalid_argument(
            "stiffness cost requires variable-stiffness controls");
      }
      break;
    default:
      break;
  }
}

}  // namespace

double evaluate(const CostTerm& term, const ChainModel& model,
                const StateLayout& layout, const Eigen::VectorXd& x,
                const Eigen::VectorXd& u) {
  if (x.size() != layout.nx || u.size() != layout.nu) {
    throw std::invalid_argument("cost evaluate: bad x/u size");
  }
  check_term(term, layout);
  switch (term.kind) {
    case CostKind::kStateReg: {
      return 0.5 * term.weight * (x - term.x_ref).squaredNorm();
    }
    case CostKind::kControlReg: {
      return 0.5 * term.weight * (u.head(layout.m) - term.u_ref).squaredNorm();
    }
    case CostKind::kGoalTracking: {
      const Eigen::Vector2d r = fk_ee(model, x.head(layout.n)) - term.target;
      return 0.5 * term.weight * r.squaredNorm();
    }
    case CostKind::kVsaStiffness: {
      const auto sigma = u.tail(layout.m);
      return term.weight * term.lambda *
             (sigma.array() - term.sigma_ref).sum();
    }
    case CostKind::kTipVelocity: {
      const Eigen::Vector2d r =
          tip_velocity(model, x.head(layout.n), x.segment(layout.n, layout.n)) -
          term.v_target;
      return 0.5 * term.weight * r.squaredNorm();
    }
  }
  throw std::logic_error("unreachable cost kind");
}

double evaluate_sum(const std::vector<CostTerm>& terms, const ChainModel& model,
                    const StateLayout& layout, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& u) {
  double total = 0.0;
  for (const auto& t : terms) total += evaluate(t, model, layout, x, u);
  return total;
}

void accumulate_quadratic(const CostTerm& term, const ChainModel& model,
                          const StateLayout& layout, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& u, CostQuadratic& out) {
  if (x.size() != layout.nx || u.size() != layout.nu) {
    throw std::invalid_argument("cost quadratic: bad x/u size");
  }
  check_term(term, layout);
  const double w = term.weight;
  const int n = layout.n;
  const int m = layout.m;
  switch (term.kind) {
    case CostKind::kStateReg: {
      const Eigen::VectorXd r = x - term.x_ref;
      out.value += 0.5 * w * r.squaredNorm();
      out.lx += w * r;
      out.lxx.diagonal().array() += w;
      return;
    }
    case CostKind::kControlReg: {
      const Eigen::VectorXd r = u.head(m) - term.u_ref;
      out.value += 0.5 * w * r.squaredNorm();
      out.lu.head(m) += w * r;
      out.luu.diagonal().head(m).array() += w;
      return;
    }
    case CostKind::kGoalTracking: {
      const Eigen::VectorXd q = x.head(n);
      const Eigen::Vector2d r = fk_ee(model, q) - term.target;
      const Eigen::MatrixXd jac = fk_jacobian(model, q);
      out.value += 0.5 * w * r.squaredNorm();
      out.lx.head(n) += w * jac.transpose() * r;
      out.lxx.topLeftCorner(n, n) += w * jac.transpose() * jac;
      return;
    }
    case CostKind::kVsaStiffness: {
      const auto sigma = u.tail(m);
      out.value += w * term.lambda * (sigma.array() - term.sigma_ref).sum();
      out.lu.tail(m).array() += w * term.lambda;
      return;
    }
    case CostKind::kTipVelocity: {
      const Eigen::VectorXd q = x.head(n);
      const Eigen::VectorXd qd = x.segment(n, n);
      const Eigen::MatrixXd jac = fk_jacobian(model, q);
      const Eigen::Vector2d r = jac * qd - term.v_target;
      Eigen::MatrixXd jr(2, 2 * n);  // residual Jacobian over [q, qd]
      jr.leftCols(n) = tip_velocity_dq(model, q, qd);
      jr.rightCols(n) = jac;
      out.value += 0.5 * w * r.squaredNorm();
      out.lx.head(2 * n) += w * jr.transpose() * r;
      out.lxx.topLeftCorner(2 * n, 2 * n) += w * jr.transpose() * jr;
      return;
    }
  }
  throw std::logic_error("unreachable cost kind");
}

CostQuadratic quadratic_approx(const std::vector<CostTerm>& terms,
                               const ChainModel& model,
                               const StateLayout& layout,
                               const Eigen::VectorXd& x,
                               const Eigen::VectorXd& u) {
  CostQuadratic out;
  out.setZero(layout.nx, layout.nu);
  for (const auto& t : terms) {
    accumulate_quadratic(t, model, layout, x, u, out);
  }
  return out;
}

double vsa_lambda(double g2_at_min, double g2_at_max, double sigma_min,
                  double sigma_max) {
  if (!(sigma_max > sigma_min)) {
    throw std::invalid_argument("vsa_lambda: need sigma_max > sigma_min");
  }
  return (g2_at_max - g2_at_min) / (sigma_max - sigma_min);
}

}  // namespace softarm
