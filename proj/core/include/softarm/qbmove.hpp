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

#ifndef SOFTARM_QBMOVE_HPP_
#define SOFTARM_QBMOVE_HPP_

#include <stdexcept>

namespace softarm {

/// Antagonistic variable-stiffness actuator with exponential springs. The
/// pair is commanded by an equilibrium angle theta_e and a co-contraction
/// angle theta_s >= 0; at link angle q it produces
///   tau   = 2 beta cosh(alpha theta_s) sinh(alpha (q - theta_e))
///   sigma = 2 alpha beta cosh(alpha theta_s) cosh(alpha (q - theta_e)).
struct QbMoveParams {
  double alpha = 6.7328;  // 1/rad^2
  double beta = 0.0222;   // N m
};

struct QbMoveOutput {
  double tau;    // N m
  double sigma;  // N m/rad
};

struct QbMoveCommand {
  double theta_e;  // rad
  double theta_s;  // rad, >= 0
};

/// Requested torque exceeds the capacity of the commanded stiffness
/// (|alpha tau / sigma| >= 1 has no equilibrium offset).
class InfeasibleCommandError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested stiffness is below the minimum the pair can realize at the
/// required equilibrium offset (acosh argument < 1).
class StiffnessBelowMinimumError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

QbMoveOutput qbmove_forward(const QbMoveParams& p, double theta_e,
                            double theta_s, double q);

/// Inverts the actuator map: finds (theta_e, theta_s) producing the requested
/// (tau, sigma) at link angle q. Throws InfeasibleCommandError or
/// StiffnessBelowMinimumError outside the feasible set.
QbMoveCommand qbmove_invert(const QbMoveParams& p, double tau, double sigma,
                            double q);

}  // namespace softarm

#endif  // SOFTARM_QBMOVE_HPP_
