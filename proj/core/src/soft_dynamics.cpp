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

#include "softarm/soft_dynamics.hpp"

#include <stdexcept>

namespace softarm {

namespace {

Eigen::VectorXd rigid_stiffness_diag(const ChainModel& model,
                                     const ActuationSpec& act) {
  const int n = model.n_links();
  Eigen::VectorXd k = Eigen::VectorXd::Zero(n);
  if (act.n_motors() < n) {
    k = act.passive_stiffness;
    for (int j : act.actuated_joints) k[j] = 0.0;
  }
  return k;
}

}  // namespace

SoftState SoftState::Zero(int n, int m) {
  return SoftState{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n),
                   Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(m)};
}

SoftState SoftState::from_vector(const Eigen::VectorXd& x, int n, int m) {
  if (x.size() != 2 * (n + m)) {
    throw std::invalid_argument("SoftState: bad state vector size");
  }
  return SoftState{x.segment(0, n), x.segment(n, n), x.segment(2 * n, m),
                   x.segment(2 * n + m, m)};
}

Eigen::VectorXd SoftState::to_vector() const {
  Eigen::VectorXd x(q.size() + qd.size() + theta.size() + thetad.size());
  x << q, qd, theta, thetad;
  return x;
}

ControlInput ControlInput::from_vector(const Eigen::VectorXd& u,
                                       const ActuationSpec& act) {
  const int m = act.n_motors();
  if (u.size() != act.nu()) {
    throw std::invalid_argument("ControlInput: bad control vector size");
  }
  ControlInput out;
  out.tau = u.head(m);
  if (act.is_vsa()) out.sigma = u.tail(m);
  return out;
}

Eigen::VectorXd ControlInput::to_vector() const {
  Eigen::VectorXd u(tau.size() + sigma.size());
  if (sigma.size() > 0) {
    u << tau, sigma;
  } else {
    u = tau;
  }
  return u;
}

SoftAccel forward_dynamics(const ChainModel& model, const ActuationSpec& act,
                           const SoftState& x, const ControlInput& u) {
  const int n = model.n_links();
  const int m = act.n_motors();
  if (x.q.size() != n || x.qd.size() != n || x.theta.size() != m ||
      x.thetad.size() != m || u.tau.size() != m ||
      (act.is_vsa() && u.sigma.size() != m)) {
    throw std::invalid_argument("forward_dynamics: bad input sizes");
  }
  const Eigen::VectorXd kdiag = act.stiffness_diagonal(n, u.sigma);

  // spring deflection q - S theta; at unactuated joints the spring is
  // anchored at zero so the deflection is just q
  Eigen::VectorXd dev = x.q;
  for (int j = 0; j < m; ++j) dev[act.actuated_joints[j]] -= x.theta[j];

  const Eigen::VectorXd tau_l =
      -bias(model, x.q, x.qd) - kdiag.cwiseProduct(dev);

  SoftAccel a;
  a.qdd = mass_matrix(model, x.q).llt().solve(tau_l);
  a.thetadd.resize(m);
  for (int j = 0; j < m; ++j) {
    const int i = act.actuated_joints[j];
    a.thetadd[j] = (kdiag[i] * dev[i] + u.tau[j]) / act.motor_inertia[j];
  }
  return a;
}

FdDerivatives fd_derivatives(const ChainModel& model, const ActuationSpec& act,
                             const SoftState& x, const ControlInput& u) {
  const int n = model.n_links();
  const int m = act.n_motors();
  const int nx = 2 * (n + m);
  const int nu = act.nu();

  const SoftAccel a = forward_dynamics(model, act, x, u);
  const Eigen::VectorXd kdiag = act.stiffness_diagonal(n, u.sigma);
  Eigen::VectorXd dev = x.q;
  for (int j = 0; j < m; ++j) dev[act.actuated_joints[j]] -= x.theta[j];

  // Implicit differentiation of rnea(q, qd, qdd) + K (q - S theta) = 0: the
  // inverse-dynamics derivatives at the achieved qdd already carry dM/dq.
  const RneaDerivatives rd = rnea_derivatives(model, x.q, x.qd, a.qdd);
  const Eigen::LLT<Eigen::MatrixXd> llt = mass_matrix(model, x.q).llt();

  FdDerivatives d;
  d.da_dx = Eigen::MatrixXd::Zero(n + m, nx);
  d.da_du = Eigen::MatrixXd::Zero(n + m, nu);

  Eigen::MatrixXd dtl_dq = -rd.dtau_dq;
  dtl_dq.diagonal() -= kdiag;
  d.da_dx.block(0, 0, n, n) = llt.solve(dtl_dq);
  d.da_dx.block(0, n, n, n) = llt.solve(-rd.dtau_dqd);

  // link/motor coupling through the springs at actuated joints
  Eigen::MatrixXd ks = Eigen::MatrixXd::Zero(n, m);  // K S
  for (int j = 0; j < m; ++j) {
    ks(act.actuated_joints[j], j) = kdiag[act.actuated_joints[j]];
  }
  d.da_dx.block(0, 2 * n, n, m) = llt.solve(ks);

  for (int j = 0; j < m; ++j) {
    const int i = act.actuated_joints[j];
    const double binv = 1.0 / act.motor_inertia[j];
    d.da_dx(n + j, i) = binv * kdiag[i];
    d.da_dx(n + j, 2 * n + j) = -binv * kdiag[i];
    d.da_du(n + j, j) = binv;
  }

  if (act.is_vsa()) {
    // d(tau_l)/d(sigma_j) = (S theta - q) at the joint, d(tau_m_j)/d(sigma_j)
    // = (q - S theta) at the joint
    Eigen::MatrixXd dtl_dsigma = Eigen::MatrixXd::Zero(n, m);
    for (int j = 0; j < m; ++j) {
      const int i = act.actuated_joints[j];
      dtl_dsigma(i, j) = -dev[i];
      d.da_du(n + j, m + j) = dev[i] / act.motor_inertia[j];
    }
    d.da_du.block(0, m, n, m) = llt.solve(dtl_dsigma);
  }
  return d;
}

SoftState integrate(const SoftState& x, const SoftAccel& a, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
  SoftState out;
  out.qd = x.qd + dt * a.qdd;
  out.q = x.q + dt * out.qd;
  out.thetad = x.thetad + dt * a.thetadd;
  out.theta = x.theta + dt * out.thetad;
  return out;
}

double elastic_energy(const ChainModel& model, const ActuationSpec& act,
                      const SoftState& x, const Eigen::VectorXd& sigma) {
  const int n = model.n_links();
  const Eigen::VectorXd kdiag = act.stiffness_diagonal(n, sigma);
  Eigen::VectorXd dev = x.q;
  for (int j = 0; j < act.n_motors(); ++j) {
    dev[act.actuated_joints[j]] -= x.theta[j];
  }
  return 0.5 * dev.dot(kdiag.cwiseProduct(dev));
}

double motor_kinetic_energy(const ActuationSpec& act, const SoftState& x) {
  return 0.5 * x.thetad.dot(act.motor_inertia.cwiseProduct(x.thetad));
}

Eigen::VectorXd rigid_forward_dynamics(const ChainModel& model,
                                       const ActuationSpec& act,
                                       const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& tau) {
  const int n = model.n_links();
  const int m = act.n_motors();
  if (x.size() != 2 * n || tau.size() != m) {
    throw std::invalid_argument("rigid_forward_dynamics: bad input sizes");
  }
  const Eigen::VectorXd q = x.head(n);
  const Eigen::VectorXd qd = x.tail(n);
  const Eigen::VectorXd kdiag = rigid_stiffness_diag(model, act);

  Eigen::VectorXd rhs = -bias(model, q, qd) - kdiag.cwiseProduct(q);
  for (int j = 0; j < m; ++j) rhs[act.actuated_joints[j]] += tau[j];
  return mass_matrix(model, q).llt().solve(rhs);
}

RigidDerivatives rigid_fd_derivatives(const ChainModel& model,
                                      const ActuationSpec& act,
                                      const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& tau) {
  const int n = model.n_links();
  const int m = act.n_motors();
  const Eigen::VectorXd q = x.head(n);
  const Eigen::VectorXd qd = x.tail(n);
  const Eigen::VectorXd qdd = rigid_forward_dynamics(model, act, x, tau);
  const Eigen::VectorXd kdiag = rigid_stiffness_diag(model, act);

  const RneaDerivatives rd = rnea_derivatives(model, q, qd, qdd);
  const Eigen::LLT<Eigen::MatrixXd> llt = mass_matrix(model, q).llt();

  RigidDerivatives d;
  d.da_dx.resize(n, 2 * n);
  Eigen::MatrixXd dtl_dq = -rd.dtau_dq;
  dtl_dq.diagonal() -= kdiag;
  d.da_dx.leftCols(n) = llt.solve(dtl_dq);
  d.da_dx.rightCols(n) = llt.solve(-rd.dtau_dqd);

  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, m);
  for (int j = 0; j < m; ++j) s(act.actuated_joints[j], j) = 1.0;
  d.da_du = llt.solve(s);
  return d;
}

Eigen::VectorXd rigid_integrate(const Eigen::VectorXd& x,
                                const Eigen::VectorXd& qdd, double dt) {
  const int n = static_cast<int>(qdd.size());
  if (x.size() != 2 * n || !(dt > 0.0)) {
    throw std::invalid_argument("rigid_integrate: bad inputs");
  }
  Eigen::VectorXd out(2 * n);
  out.tail(n) = x.tail(n) + dt * qdd;
  out.head(n) = x.head(n) + dt * out.tail(n);
  return out;
}

}  // namespace softarm
