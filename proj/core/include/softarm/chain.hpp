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

#ifndef SOFTARM_CHAIN_HPP_
#define SOFTARM_CHAIN_HPP_

#include <Eigen/Dense>

namespace softarm {

enum class LinkInertiaMode {
  kPointMass,  // all link mass concentrated at the COM
  kRod,        // adds the slender-rod term m*l^2/12 about the COM
};

/// Planar serial chain of revolute joints. The zero configuration points along
/// +x and gravity acts along -y of the base frame. Joint angles are relative;
/// internally most quantities are expressed in absolute link angles
/// phi_i = q_1 + ... + q_i, where the dynamics take a closed form with
/// configuration-independent coupling coefficients.
class ChainModel {
 public:
  ChainModel(const Eigen::VectorXd& masses, const Eigen::VectorXd& lengths,
             const Eigen::VectorXd& com_offsets, double gravity,
             LinkInertiaMode inertia_mode = LinkInertiaMode::kPointMass);

  int n_links() const { return n_; }
  const Eigen::VectorXd& masses() const { return mass_; }
  const Eigen::VectorXd& lengths() const { return length_; }
  const Eigen::VectorXd& com_offsets() const { return com_; }
  double gravity() const { return gravity_; }
  LinkInertiaMode inertia_mode() const { return mode_; }

  // Precomputed coefficients of the absolute-angle form (constant in q).
  const Eigen::MatrixXd& coupling() const { return coupling_; }
  const Eigen::VectorXd& gravity_coeff() const { return grav_coeff_; }
  const Eigen::VectorXd& link_inertia() const { return link_inertia_; }

  /// Returns a copy with all masses scaled by `factor` (plant perturbation).
  ChainModel scaled_masses(double factor) const;

 private:
  int n_;
  Eigen::VectorXd mass_, length_, com_;
  double gravity_;
  LinkInertiaMode mode_;
  Eigen::MatrixXd coupling_;      // A_pr = sum_{k >= max(p,r)} m_k lam_kp lam_kr
  Eigen::VectorXd grav_coeff_;    // w_p = sum_{k >= p} m_k lam_kp
  Eigen::VectorXd link_inertia_;  // inertia about the COM per link
};

struct RneaDerivatives {
  Eigen::MatrixXd dtau_dq;   // n x n, includes d(M qdd)/dq at the given qdd
  Eigen::MatrixXd dtau_dqd;  // n x n
};

/// Joint-space inertia matrix M(q); symmetric positive definite.
Eigen::MatrixXd mass_matrix(const ChainModel& model, const Eigen::VectorXd& q);

/// Inverse dynamics: tau = M(q) qdd + C(q,qd) qd + G(q).
Eigen::VectorXd rnea(const ChainModel& model, const Eigen::VectorXd& q,
                     const Eigen::VectorXd& qd, const Eigen::VectorXd& qdd);

/// Velocity and gravity terms C(q,qd) qd + G(q); equals rnea with qdd = 0.
Eigen::VectorXd bias(const ChainModel& model, const Eigen::VectorXd& q,
                     const Eigen::VectorXd& qd);

/// Partial derivatives of rnea w.r.t. q and qd at fixed qdd. The dq block
/// carries the d(M(q) qdd)/dq term, which is what implicit differentiation of
/// the equations of motion needs.
RneaDerivatives rnea_derivatives(const ChainModel& model,
                                 const Eigen::VectorXd& q,
                                 const Eigen::VectorXd& qd,
                                 const Eigen::VectorXd& qdd);

/// End-effector (tip of the last link) position in the base frame.
Eigen::Vector2d fk_ee(const ChainModel& model, const Eigen::VectorXd& q);

/// 2 x n end-effector Jacobian d(fk_ee)/dq.
Eigen::MatrixXd fk_jacobian(const ChainModel& model, const Eigen::VectorXd& q);

/// End-effector velocity J(q) qd.
Eigen::Vector2d tip_velocity(const ChainModel& model, const Eigen::VectorXd& q,
                             const Eigen::VectorXd& qd);

/// 2 x n configuration derivative of the end-effector velocity, d(J qd)/dq.
Eigen::MatrixXd tip_velocity_dq(const ChainModel& model,
                                const Eigen::VectorXd& q,
                                const Eigen::VectorXd& qd);

double kinetic_energy(const ChainModel& model, const Eigen::VectorXd& q,
                      const Eigen::VectorXd& qd);
double potential_energy(const ChainModel& model, const Eigen::VectorXd& q);

}  // namespace softarm

#endif  // SOFTARM_CHAIN_HPP_
