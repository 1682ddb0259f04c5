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

#include "softarm/action.hpp"

#include <stdexcept>
#include <utility>

namespace softarm {

void ActionDerivatives::resize(int nx, int nu) {
  fx = Eigen::MatrixXd::Zero(nx, nx);
  fu = Eigen::MatrixXd::Zero(nx, nu);
  lx = Eigen::VectorXd::Zero(nx);
  lu = Eigen::VectorXd::Zero(nu);
  lxx = Eigen::MatrixXd::Zero(nx, nx);
  luu = Eigen::MatrixXd::Zero(nu, nu);
  lxu = Eigen::MatrixXd::Zero(nx, nu);
}

namespace {

// Discrete Jacobians of the semi-implicit Euler step from the acceleration
// Jacobians. Position and velocity coordinates of one block (q or theta) sit
// at rows p0 / v0; acceleration rows of that block start at a0.
//
//   v+ = v + dt a(x, u)          -> dv+/d. = [dv/d.] + dt da/d.
//   p+ = p + dt v+ = p + dt v + dt^2 a
void fill_block(Eigen::MatrixXd& fx, Eigen::MatrixXd& fu,
                const Eigen::MatrixXd& da_dx, const Eigen::MatrixXd& da_du,
                int p0, int v0, int a0, int dim, double dt) {
  fx.middleRows(p0, dim) = dt * dt * da_dx.middleRows(a0, dim);
  fx.middleRows(v0, dim) = dt * da_dx.middleRows(a0, dim);
  for (int i = 0; i < dim; ++i) {
    fx(p0 + i, p0 + i) += 1.0;
    fx(p0 + i, v0 + i) += dt;
    fx(v0 + i, v0 + i) += 1.0;
  }
  fu.middleRows(p0, dim) = dt * dt * da_du.middleRows(a0, dim);
  fu.middleRows(v0, dim) = dt * da_du.middleRows(a0, dim);
}

void check_no_control_terms(const std::vector<CostTerm>& terms) {
  for (const auto& t : terms) {
    if (t.kind == CostKind::kControlReg || t.kind == CostKind::kVsaStiffness) {
      throw std::invalid_argument(
          "terminal cost cannot contain control-dependent terms");
    }
  }
}

}  // namespace

SoftActionModel::SoftActionModel(ChainModel model, ActuationSpec act,
                                 std::vector<CostTerm> terms, double dt)
    : model_(std::move(model)),
      act_(std::move(act)),
      terms_(std::move(terms)),
      dt_(dt) {
  act_.validate(model_.n_links());
  if (!(dt_ > 0.0)) throw std::invalid_argument("action: dt must be > 0");
  layout_ = soft_layout(model_, act_);
}

void SoftActionModel::calc(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                           Eigen::VectorXd& xnext, double& cost) const {
  const SoftState s = SoftState::from_vector(x, layout_.n, layout_.m);
  const ControlInput c = ControlInput::from_vector(u, act_);
  xnext = integrate(s, forward_dynamics(model_, act_, s, c), dt_).to_vector();
  cost = dt_ * evaluate_sum(terms_, model_, layout_, x, u);
}

void SoftActionModel::calc_diff(const Eigen::VectorXd& x,
                                const Eigen::VectorXd& u,
                                ActionDerivatives& d) const {
  const SoftState s = SoftState::from_vector(x, layout_.n, layout_.m);
  const ControlInput c = ControlInput::from_vector(u, act_);
  const FdDerivatives fd = fd_derivatives(model_, act_, s, c);

  const int n = layout_.n;
  const int m = layout_.m;
  d.resize(layout_.nx, layout_.nu);
  fill_block(d.fx, d.fu, fd.da_dx, fd.da_du, 0, n, 0, n, dt_);
  fill_block(d.fx, d.fu, fd.da_dx, fd.da_du, 2 * n, 2 * n + m, n, m, dt_);

  const CostQuadratic quad = quadratic_approx(terms_, model_, layout_, x, u);
  d.lx = dt_ * quad.lx;
  d.lu = dt_ * quad.lu;
  d.lxx = dt_ * quad.lxx;
  d.luu = dt_ * quad.luu;
  d.lxu = dt_ * quad.lxu;
}

RigidActionModel::RigidActionModel(ChainModel model, ActuationSpec act,
                                   std::vector<CostTerm> terms, double dt)
    : model_(std::move(model)),
      act_(std::move(act)),
      terms_(std::move(terms)),
      dt_(dt) {
  act_.validate(model_.n_links());
  if (!(dt_ > 0.0)) throw std::invalid_argument("action: dt must be > 0");
  layout_ = rigid_layout(model_, act_);
}

void RigidActionModel::calc(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                            Eigen::VectorXd& xnext, double& cost) const {
  xnext = rigid_integrate(x, rigid_forward_dynamics(model_, act_, x, u), dt_);
  cost = dt_ * evaluate_sum(terms_, model_, layout_, x, u);
}

void RigidActionModel::calc_diff(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& u,
                                 ActionDerivatives& d) const {
  const RigidDerivatives rd = rigid_fd_derivatives(model_, act_, x, u);
  d.resize(layout_.nx, layout_.nu);
  fill_block(d.fx, d.fu, rd.da_dx, rd.da_du, 0, layout_.n, 0, layout_.n, dt_);

  const CostQuadratic quad = quadratic_approx(terms_, model_, layout_, x, u);
  d.lx = dt_ * quad.lx;
  d.lu = dt_ * quad.lu;
  d.lxx = dt_ * quad.lxx;
  d.luu = dt_ * quad.luu;
  d.lxu = dt_ * quad.lxu;
}

TermCostSum::TermCostSum(ChainModel model, StateLayout layout,
                         std::vector<CostTerm> terms)
    : model_(std::move(model)), layout_(layout), terms_(std::move(terms)) {
  check_no_control_terms(terms_);
}

double TermCostSum::calc(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(layout_.nu);
  return evaluate_sum(terms_, model_, layout_, x, u0);
}

void TermCostSum::calc_diff(const Eigen::VectorXd& x, Eigen::VectorXd& lx,
                            Eigen::MatrixXd& lxx) const {
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(layout_.nu);
  const CostQuadratic quad = quadratic_approx(terms_, model_, layout_, x, u0);
  lx = quad.lx;
  lxx = quad.lxx;
}

}  // namespace softarm
