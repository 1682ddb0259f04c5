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

#include "softarm/actuation.hpp"

#include <stdexcept>

namespace softarm {

void ActuationSpec::validate(int n_joints) const {
  const int m = n_motors();
  if (m < 1 || m > n_joints) {
    throw std::invalid_argument("actuation: need 1 <= m <= n actuated joints");
  }
  int prev = -1;
  for (int j : actuated_joints) {
    if (j <= prev || j < 0 || j >= n_joints) {
      throw std::invalid_argument(
          "actuation: actuated joints must be strictly increasing in [0, n)");
    }
    prev = j;
  }
  if (motor_inertia.size() != m || (motor_inertia.array() <= 0.0).any()) {
    throw std::invalid_argument("actuation: motor inertias must be m positive values");
  }
  if (kind == ActuationKind::kSea) {
    if (stiffness.size() != m || (stiffness.array() <= 0.0).any()) {
      throw std::invalid_argument("actuation: SEA stiffness must be m positive values");
    }
  } else {
    if (sigma_min.size() != m || (sigma_min.array() <= 0.0).any()) {
      throw std::invalid_argument("actuation: VSA sigma_min must be m positive values");
    }
    if (sigma_max.size() != m ||
        ((sigma_max - sigma_min).array() <= 0.0).any()) {
      throw std::invalid_argument("actuation: VSA needs sigma_max > sigma_min");
    }
    if (sigma_ref <= 0.0) {
      throw std::invalid_argument("actuation: VSA sigma_ref must be > 0");
    }
  }
  if (m < n_joints) {
    if (passive_stiffness.size() != n_joints) {
      throw std::invalid_argument(
          "actuation: passive_stiffness must have one entry per joint");
    }
    std::vector<bool> actuated(n_joints, false);
    for (int j : actuated_joints) actuated[j] = true;
    for (int i = 0; i < n_joints; ++i) {
      if (!actuated[i] && passive_stiffness[i] <= 0.0) {
        throw std::invalid_argument(
            "actuation: passive stiffness must be > 0 at unactuated joints");
      }
    }
  }
}

Eigen::VectorXd ActuationSpec::stiffness_diagonal(
    int n_joints, const Eigen::VectorXd& sigma) const {
  Eigen::VectorXd k = Eigen::VectorXd::Zero(n_joints);
  if (n_motors() < n_joints) k = passive_stiffness;
  const Eigen::VectorXd& active = is_vsa() ? sigma : stiffness;
  for (int j = 0; j < n_motors(); ++j) k[actuated_joints[j]] = active[j];
  return k;
}

ActuationSpec make_sea_uniform(int n_joints, double motor_inertia,
                               double stiffness) {
  ActuationSpec spec;
  spec.kind = ActuationKind::kSea;
  spec.actuated_joints.resize(n_joints);
  for (int i = 0; i < n_joints; ++i) spec.actuated_joints[i] = i;
  spec.motor_inertia = Eigen::VectorXd::Constant(n_joints, motor_inertia);
  spec.stiffness = Eigen::VectorXd::Constant(n_joints, stiffness);
  spec.validate(n_joints);
  return spec;
}

ActuationSpec make_vsa_uniform(int n_joints, double motor_inertia,
                               double sigma_min, double sigma_max,
                               double sigma_ref) {
  ActuationSpec spec;
  spec.kind = ActuationKind::kVsa;
  spec.actuated_joints.resize(n_joints);
  for (int i = 0; i < n_joints; ++i) spec.actuated_joints[i] = i;
  spec.motor_inertia = Eigen::VectorXd::Constant(n_joints, motor_inertia);
  spec.sigma_min = Eigen::VectorXd::Constant(n_joints, sigma_min);
  spec.sigma_max = Eigen::VectorXd::Constant(n_joints, sigma_max);
  spec.sigma_ref = sigma_ref;
  spec.validate(n_joints);
  return spec;
}

}  // namespace softarm
