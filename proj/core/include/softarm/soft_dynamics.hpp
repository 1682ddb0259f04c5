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

#ifndef SOFTARM_SOFT_DYNAMICS_HPP_
#define SOFTARM_SOFT_DYNAMICS_HPP_

#include <Eigen/Dense>

#include "softarm/actuation.hpp"
#include "softarm/chain.hpp"

namespace softarm {

/// State of an elastically actuated chain, stacked as x = [q, qd, theta,
/// thetad] with n link coordinates and m motor coordinates.
struct SoftState {
  Eigen::VectorXd q, qd, theta, thetad;

  static SoftState Zero(int n, int m);
  static SoftState from_vector(const Eigen::VectorXd& x, int n, int m);
  Eigen::VectorXd to_vector() const;
};

/// Control u = [tau] for SEA, u = [tau, sigma] for VSA (sigma empty for SEA).
struct ControlInput {
  Eigen::VectorXd tau, sigma;

  static ControlInput from_vector(const Eigen::VectorXd& u,
                                  const ActuationSpec& act);
  Eigen::VectorXd to_vector() const;
};

struct SoftAccel {
  Eigen::VectorXd qdd, thetadd;
};

/// Block forward dynamics. Link side: M(q) qdd = -C(q,qd) qd - G(q)
/// - K (q - S theta); motor side: B thetadd = S^T K (q - S theta) + tau.
/// The motor block is diagonal and inverted entrywise; only the link block
/// requires a Cholesky solve.
SoftAccel forward_dynamics(const ChainModel& model, const ActuationSpec& act,
                           const SoftState& x, const ControlInput& u);

/// Acceleration Jacobians. Rows: [qdd; thetadd] (n+m). Columns of da_dx
/// follow the state layout [q, qd, theta, thetad]; columns of da_du follow
/// the control layout [tau] or [tau, sigma].
struct FdDerivatives {
  Eigen::MatrixXd da_dx;
  Eigen::MatrixXd da_du;
};

/// Analytical derivatives of forward_dynamics. The link rows reuse the
/// rigid-body inverse-dynamics derivatives evaluated at the achieved qdd, so
/// the configuration dependence of M is included; the motor rows are
/// closed-form diagonals.
FdDerivatives fd_derivatives(const ChainModel& model, const ActuationSpec& act,
                             const SoftState& x, const ControlInput& u);

/// Semi-implicit Euler: velocities first, then positions with the updated
/// velocities.
SoftState integrate(const SoftState& x, const SoftAccel& a, double dt);

/// Spring potential + motor kinetic energy helpers used by conservation
/// tests: 0.5 (q - S theta)^T K (q - S theta) and 0.5 thetad^T B thetad.
double elastic_energy(const ChainModel& model, const ActuationSpec& act,
                      const SoftState& x, const Eigen::VectorXd& sigma);
double motor_kinetic_energy(const ActuationSpec& act, const SoftState& x);

/// Rigid counterpart used by the motivational and energy studies: state
/// [q, qd], control tau applied directly at the actuated joints, passive
/// springs (anchored at zero) at the remaining joints.
/// M(q) qdd = S tau - C(q,qd) qd - G(q) - K_passive q.
Eigen::VectorXd rigid_forward_dynamics(const ChainModel& model,
                                       const ActuationSpec& act,
                                       const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& tau);

struct RigidDerivatives {
  Eigen::MatrixXd da_dx;  // n x 2n, columns [q, qd]
  Eigen::MatrixXd da_du;  // n x m
};

RigidDerivatives rigid_fd_derivatives(const ChainModel& model,
                                      const ActuationSpec& act,
                                      const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& tau);

/// Semi-implicit Euler on the rigid state [q, qd].
Eigen::VectorXd rigid_integrate(const Eigen::VectorXd& x,
                                const Eigen::VectorXd& qdd, double dt);

}  // namespace softarm

#endif  // SOFTARM_SOFT_DYNAMICS_HPP_
