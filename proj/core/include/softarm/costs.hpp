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

#ifndef SOFTARM_COSTS_HPP_
#define SOFTARM_COSTS_HPP_

#include <Eigen/Dense>
#include <vector>

#include "softarm/actuation.hpp"
#include "softarm/chain.hpp"

namespace softarm {

enum class CostKind {
  kStateReg,       // 0.5 w |x - x_ref|^2
  kControlReg,     // 0.5 w |tau - tau_ref|^2 (torque channels only)
  kGoalTracking,   // 0.5 w |fk_ee(q) - target|^2
  kVsaStiffness,   // w lambda sum_j (sigma_j - sigma_ref), linear in sigma
  kTipVelocity,    // 0.5 w |J(q) qd - v_target|^2
};

/// Describes how a state/control vector maps onto chain coordinates.
struct StateLayout {
  int n = 0;          // link joints
  int m = 0;          // motors
  int nx = 0;         // state dimension
  int nu = 0;         // control dimension
  bool has_motors = false;  // motor coordinates present in the state
  bool vsa = false;         // sigma channels in the tail of u
};

StateLayout soft_layout(const ChainModel& model, const ActuationSpec& act);
StateLayout rigid_layout(const ChainModel& model, const ActuationSpec& act);

struct CostTerm {
  CostKind kind = CostKind::kStateReg;
  double weight = 1.0;
  Eigen::VectorXd x_ref;           // state regularization
  Eigen::VectorXd u_ref;           // torque regularization (m entries)
  Eigen::Vector2d target{0, 0};    // goal tracking [m]
  Eigen::Vector2d v_target{0, 0};  // tip velocity [m/s]
  double lambda = 0.0;             // stiffness-energy slope
  double sigma_ref = 0.0;          // stiffness-cost reference
};

/// Quadratic (Gauss-Newton) expansion of a cost around (x, u).
struct CostQuadratic {
  double value = 0.0;
  Eigen::VectorXd lx, lu;
  Eigen::MatrixXd lxx, luu, lxu;

  void setZero(int nx, int nu);
};

double evaluate(const CostTerm& term, const ChainModel& model,
                const StateLayout& layout, const Eigen::VectorXd& x,
                const Eigen::VectorXd& u);

double evaluate_sum(const std::vector<CostTerm>& terms, const ChainModel& model,
                    const StateLayout& layout, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& u);

/// Accumulates value, gradients and Gauss-Newton Hessian blocks of one term
/// into `out` (which must be pre-sized with setZero).
void accumulate_quadratic(const CostTerm& term, const ChainModel& model,
                          const StateLayout& layout, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& u, CostQuadratic& out);

CostQuadratic quadratic_approx(const std::vector<CostTerm>& terms,
                               const ChainModel& model,
                               const StateLayout& layout,
                               const Eigen::VectorXd& x,
                               const Eigen::VectorXd& u);

/// Slope of the stiffness-energy surrogate: the secant of the squared
/// torque-capacity curve g^2(sigma) between the stiffness bounds.
double vsa_lambda(double g2_at_min, double g2_at_max, double sigma_min,
                  double sigma_max);

}  // namespace softarm

#endif  // SOFTARM_COSTS_HPP_
