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

#ifndef SOFTARM_ACTUATION_HPP_
#define SOFTARM_ACTUATION_HPP_

#include <Eigen/Dense>
#include <vector>

namespace softarm {

enum class ActuationKind {
  kSea,  // series-elastic: fixed per-joint stiffness
  kVsa,  // variable-stiffness: stiffness is a bounded control channel
};

/// Elastic actuation layout for a chain of n joints. A subset of joints
/// (strictly increasing zero-based indices) carries motors coupled through
/// torsional springs; the remaining joints are passive springs anchored at
/// zero deflection. The selection matrix S (n x m) is represented implicitly
/// by `actuated_joints`.
struct ActuationSpec {
  ActuationKind kind = ActuationKind::kSea;
  std::vector<int> actuated_joints;   // strictly increasing, in [0, n)
  Eigen::VectorXd motor_inertia;      // m entries, > 0 [kg m^2]
  Eigen::VectorXd stiffness;          // m entries, > 0 [N m/rad], SEA only
  Eigen::VectorXd sigma_min;          // m entries, > 0, VSA only
  Eigen::VectorXd sigma_max;          // m entries, > sigma_min, VSA only
  Eigen::VectorXd passive_stiffness;  // n entries; used at unactuated joints
  double sigma_ref = 0.0;             // stiffness-cost reference, VSA only

  int n_motors() const { return static_cast<int>(actuated_joints.size()); }
  bool is_vsa() const { return kind == ActuationKind::kVsa; }
  /// Control dimension: m torques, plus m stiffness channels for VSA.
  int nu() const { return is_vsa() ? 2 * n_motors() : n_motors(); }

  /// Throws std::invalid_argument when the layout is inconsistent for a chain
  /// with n joints.
  void validate(int n_joints) const;

  /// Diagonal of K (n entries): commanded or fixed stiffness at actuated
  /// joints, passive stiffness elsewhere. For SEA `sigma` may be empty.
  Eigen::VectorXd stiffness_diagonal(int n_joints,
                                     const Eigen::VectorXd& sigma) const;
};

/// Fully actuated SEA layout with S = I, shared motor inertia and stiffness.
ActuationSpec make_sea_uniform(int n_joints, double motor_inertia,
                               double stiffness);

/// Fully actuated VSA layout with S = I and shared bounds.
ActuationSpec make_vsa_uniform(int n_joints, double motor_inertia,
                               double sigma_min, double sigma_max,
                               double sigma_ref);

}  // namespace softarm

#endif  // SOFTARM_ACTUATION_HPP_
