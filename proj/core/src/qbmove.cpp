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

#include "softarm/qbmove.hpp"

#include <cmath>

namespace softarm {

QbMoveOutput qbmove_forward(const QbMoveParams& p, double theta_e,
                            double theta_s, double q) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0)) {
    throw std::invalid_argument("qbmove: alpha and beta must be > 0");
  }
  if (theta_s < 0.0) {
    throw std::invalid_argument("qbmove: theta_s must be >= 0");
  }
  const double cs = std::cosh(p.alpha * theta_s);
  const double d = p.alpha * (q - theta_e);
  return QbMoveOutput{2.0 * p.beta * cs * std::sinh(d),
                      2.0 * p.alpha * p.beta * cs * std::cosh(d)};
}

QbMoveCommand qbmove_invert(const QbMoveParams& p, double tau, double sigma,
                            double q) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0)) {
    throw std::invalid_argument("qbmove: alpha and beta must be > 0");
  }
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("qbmove: sigma must be > 0");
  }
  // tau/sigma = tanh(alpha (q - theta_e)) / alpha fixes the equilibrium
  // offset; the co-contraction follows from the stiffness equation.
  const double ratio = p.alpha * tau / sigma;
  if (std::abs(ratio) >= 1.0) {
    throw InfeasibleCommandError(
        "qbmove: requested torque exceeds capacity at this stiffness");
  }
  const double theta_e = q - std::atanh(ratio) / p.alpha;
  const double denom =
      2.0 * p.alpha * p.beta * std::cosh(p.alpha * (q - theta_e));
  const double arg = sigma / denom;
  if (arg < 1.0) {
    throw StiffnessBelowMinimumError(
        "qbmove: requested stiffness below the realizable minimum");
  }
  const double theta_s = std::acosh(arg) / p.alpha;
  return QbMoveCommand{theta_e, theta_s};
}

}  // namespace softarm
