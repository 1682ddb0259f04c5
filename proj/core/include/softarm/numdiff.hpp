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

#ifndef SOFTARM_NUMDIFF_HPP_
#define SOFTARM_NUMDIFF_HPP_

#include <cstdint>

#include "softarm/soft_dynamics.hpp"

namespace softarm {

/// Central finite differences of forward_dynamics over every state and
/// control coordinate. Same block layout as fd_derivatives.
FdDerivatives numdiff_dynamics(const ChainModel& model,
                               const ActuationSpec& act, const SoftState& x,
                               const ControlInput& u, double h = 1e-6);

/// Accuracy and timing comparison between the analytical derivatives and the
/// finite-difference reference over randomized configurations (positions
/// uniform in [-pi, pi], zero velocities, zero torques; VSA stiffness at the
/// midpoint of its bounds).
struct DiffReport {
  int n_samples = 0;
  double max_abs_difference = 0.0;  // over all samples and blocks
  double mean_abs_difference = 0.0; // mean over samples of the per-sample max
  double normalizer = 0.0;          // max |analytical| entry over all samples
  double ratio = 0.0;               // max_abs_difference / normalizer
  double analytic_us_per_call = 0.0;
  double numdiff_us_per_call = 0.0;
};

DiffReport compare_derivatives(const ChainModel& model,
                               const ActuationSpec& act, int n_samples,
                               std::uint64_t seed, double h = 1e-6,
                               int timing_calls = 100);

}  // namespace softarm

#endif  // SOFTARM_NUMDIFF_HPP_
