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

#ifndef SOFTARM_SIMULATE_HPP_
#define SOFTARM_SIMULATE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "softarm/soft_dynamics.hpp"
#include "softarm/solver.hpp"

namespace softarm {

/// Plant mismatch for closed-loop evaluation. Torque noise is drawn per step
/// and per motor from a seeded normal distribution; feedforward and feedback
/// rollouts with the same seed see identical noise sequences.
struct Perturbation {
  double mass_scale = 1.0;
  double stiffness_scale = 1.0;
  Eigen::VectorXd x0_offset;      // empty = none
  double torque_noise_std = 0.0;  // N m
  std::uint64_t seed = 0;
};

struct RolloutResult {
  std::vector<Eigen::VectorXd> xs;  // N+1 states of the perturbed plant
  std::vector<Eigen::VectorXd> us;  // N commanded controls (after clamping)
  bool ok = true;                   // false when the rollout left float range
};

/// Replays the stored controls open-loop on the perturbed plant.
RolloutResult rollout_ff(const ChainModel& model, const ActuationSpec& act,
                         const Perturbation& pert,
                         const std::vector<Eigen::VectorXd>& us,
                         const Eigen::VectorXd& x0, double dt,
                         const std::optional<ControlBounds>& bounds = {});

/// Closed-loop replay: u_k = us_ref[k] + K[k] (x - xs_ref[k]), clamped to the
/// bounds before application so the plant never sees out-of-range stiffness.
RolloutResult rollout_fb(const ChainModel& model, const ActuationSpec& act,
                         const Perturbation& pert,
                         const std::vector<Eigen::VectorXd>& us_ref,
                         const std::vector<Eigen::VectorXd>& xs_ref,
                         const std::vector<Eigen::MatrixXd>& gains,
                         const Eigen::VectorXd& x0, double dt,
                         const std::optional<ControlBounds>& bounds = {});

/// Per-joint RMS of the link position error over the whole trajectory.
Eigen::VectorXd rms_error(const std::vector<Eigen::VectorXd>& xs,
                          const std::vector<Eigen::VectorXd>& xs_ref,
                          int n_joints);

/// Torque effort sum_k |tau_k|^2; stiffness channels are excluded.
double control_energy(const std::vector<Eigen::VectorXd>& us, int n_motors);

}  // namespace softarm

#endif  // SOFTARM_SIMULATE_HPP_
