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

#ifndef SOFTARM_TASK_CONFIG_HPP_
#define SOFTARM_TASK_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "softarm/actuation.hpp"
#include "softarm/chain.hpp"
#include "softarm/solver.hpp"

namespace softarm {

/// Configuration problem with the offending location when known. `line` is
/// 1-based, 0 when the error is not tied to a single line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class TaskKind {
  kRegulation,       // drive the tip to a Cartesian point
  kSwingUp,          // reach an upright posture (gravity in the plane)
  kRigidVsSoft,      // replay rigid-optimal torques on elastic plants
  kDerivativeStudy,  // analytic vs finite-difference accuracy and timing
  kEnergyStudy,      // torque effort of rigid vs SEA vs VSA on one task
};

std::string to_string(TaskKind kind);

/// Parsed task file. Sections and keys are fixed; unknown ones are rejected
/// at parse time, missing required ones at validation time.
struct TaskConfig {
  TaskKind task = TaskKind::kRegulation;
  std::uint64_t seed = 0;

  // [chain]
  int links = 0;
  Eigen::VectorXd masses, lengths, com_offsets;
  double gravity = 9.81;
  LinkInertiaMode inertia = LinkInertiaMode::kPointMass;

  // [actuation]
  ActuationKind kind = ActuationKind::kSea;
  std::vector<int> actuated_joints;  // default: all
  Eigen::VectorXd motor_inertia;
  std::optional<Eigen::VectorXd> stiffness;            // SEA
  std::optional<Eigen::VectorXd> sigma_min, sigma_max; // VSA
  std::optional<double> sigma_ref;                     // VSA, default min
  std::optional<Eigen::VectorXd> passive_stiffness;
  std::optional<double> tau_max;  // optional symmetric torque bound

  // [horizon]
  std::optional<double> duration;  // s
  std::optional<double> dt;        // s

  // [costs]
  double state_weight = 0.0;
  double control_weight = 0.0;
  double goal_weight = 0.0;
  double terminal_weight = 0.0;
  double vsa_weight = 0.0;
  double vsa_lambda = 0.0;
  double tip_velocity_weight = 0.0;

  // [target]
  std::optional<Eigen::Vector2d> point;         // m
  std::optional<Eigen::VectorXd> posture;       // rad
  std::optional<Eigen::Vector2d> tip_velocity;  // m/s, terminal residual

  // [solver]
  SolverSettings solver;

  // [study]
  std::optional<Eigen::VectorXd> stiffness_sweep;  // rigid-vs-soft
  int samples = 20;                                // derivative-study
  double fd_step = 1e-6;
  int timing_calls = 100;

  // [perturbation]
  bool has_perturbation = false;
  int draws = 10;
  double mass_scale_min = 1.0, mass_scale_max = 1.0;
  double stiffness_scale_min = 1.0, stiffness_scale_max = 1.0;
  double torque_noise_std = 0.0;

  // [output]
  std::string out_dir = "out";

  /// Cross-field checks for the selected task kind; throws ConfigError naming
  /// the first missing or inconsistent key.
  void validate() const;

  ChainModel make_chain() const;
  /// Actuation for the requested kind; for the energy study `want` selects
  /// the SEA or VSA variant built from the same file.
  ActuationSpec make_actuation(ActuationKind want) const;
};

TaskConfig parse_task_config(const std::string& path);
TaskConfig parse_task_config_text(const std::string& text);

}  // namespace softarm

#endif  // SOFTARM_TASK_CONFIG_HPP_
