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

#ifndef SOFTARM_BOX_QP_HPP_
#define SOFTARM_BOX_QP_HPP_

#include <Eigen/Dense>
#include <vector>

namespace softarm {

struct BoxQpSettings {
  int max_iterations = 100;
  double grad_tolerance = 1e-9;      // stop on free-gradient infinity norm
  double rel_improvement = 1e-12;    // stop on relative cost decrease
  double armijo = 0.1;
  double step_decrease = 0.5;
  double min_step = 1e-22;
  double clamp_tolerance = 1e-12;    // distance to a bound that counts as active
};

/// Result of min_x 0.5 x'Hx + g'x subject to lb <= x <= ub.
struct BoxQpResult {
  Eigen::VectorXd x;
  std::vector<int> free_set;     // ascending coordinate indices
  std::vector<int> clamped_set;  // ascending coordinate indices
  Eigen::LLT<Eigen::MatrixXd> free_llt;  // factorization of H[free, free]
  bool success = false;
  int iterations = 0;
};

/// Projected-Newton box QP: coordinates sitting on a bound with an outward
/// gradient are clamped, a Newton step is taken in the free subspace, and a
/// projected Armijo backtracking line search enforces decrease. H must be
/// positive definite on the free subspace. Infinite bounds are allowed.
BoxQpResult box_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& g,
                   const Eigen::VectorXd& lb, const Eigen::VectorXd& ub,
                   const Eigen::VectorXd& x_init,
                   const BoxQpSettings& settings = BoxQpSettings());

}  // namespace softarm

#endif  // SOFTARM_BOX_QP_HPP_
