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

#include "softarm/numdiff.hpp"

#include <chrono>
#include <random>
#include <stdexcept>

namespace softarm {

namespace {

Eigen::VectorXd accel_vector(const ChainModel& model, const ActuationSpec& act,
                             const Eigen::VectorXd& x,
                             const Eigen::VectorXd& u) {
  const int n = model.n_links();
  const int m = act.n_motors();
  const SoftAccel a =
      forward_dynamics(model, act, SoftState::from_vector(x, n, m),
                       ControlInput::from_vector(u, act));
  Eigen::VectorXd out(n + m);
  out << a.qdd, a.thetadd;
  return out;
}

}  // namespace

FdDerivatives numdiff_dynamics(const ChainModel& model,
                               const ActuationSpec& act, const SoftState& x,
                               const ControlInput& u, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("numdiff: step must be > 0");
  const int n = model.n_links();
  const int m = act.n_motors();
  const Eigen::VectorXd xv = x.to_vector();
  const Eigen::VectorXd uv = u.to_vector();

  FdDerivatives d;
  d.da_dx.resize(n + m, xv.size());
  d.da_du.resize(n + m, uv.size());

  Eigen::VectorXd pert = xv;
  for (int i = 0; i < xv.size(); ++i) {
    pert[i] = xv[i] + h;
    const Eigen::VectorXd plus = accel_vector(model, act, pert, uv);
    pert[i] = xv[i] - h;
    const Eigen::VectorXd minus = accel_vector(model, act, pert, uv);
    pert[i] = xv[i];
    d.da_dx.col(i) = (plus - minus) / (2.0 * h);
  }
  pert = uv;
  for (int i = 0; i < uv.size(); ++i) {
    pert[i] = uv[i] + h;
    const Eigen::VectorXd plus = accel_vector(model, act, xv, pert);
    pert[i] = uv[i] - h;
    const Eigen::VectorXd minus = accel_vector(model, act, xv, pert);
    pert[i] = uv[i];
    d.da_du.col(i) = (plus - minus) / (2.0 * h);
  }
  return d;
}

DiffReport compare_derivatives(const ChainModel& model,
                               const ActuationSpec& act, int n_samples,
                               std::uint64_t seed, double h, int timing_calls) {
  if (n_samples < 1) throw std::invalid_argument("compare: n_samples < 1");
  const int n = model.n_links();
  const int m = act.n_motors();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);

  std::vector<SoftState> states;
  states.reserve(n_samples);
  for (int s = 0; s < n_samples; ++s) {
    SoftState x = SoftState::Zero(n, m);
    for (int i = 0; i < n; ++i) x.q[i] = angle(rng);
    for (int j = 0; j < m; ++j) x.theta[j] = angle(rng);
    states.push_back(x);
  }
  ControlInput u;
  u.tau = Eigen::VectorXd::Zero(m);
  if (act.is_vsa()) u.sigma = 0.5 * (act.sigma_min + act.sigma_max);

  DiffReport report;
  report.n_samples = n_samples;
  double sum_max_diff = 0.0;
  for (const auto& x : states) {
    const FdDerivatives an = fd_derivatives(model, act, x, u);
    const FdDerivatives nd = numdiff_dynamics(model, act, x, u, h);
    const double diff =
        std::max((an.da_dx - nd.da_dx).cwiseAbs().maxCoeff(),
                 (an.da_du - nd.da_du).cwiseAbs().maxCoeff());
    const double mag = std::max(an.da_dx.cwiseAbs().maxCoeff(),
                                an.da_du.cwiseAbs().maxCoeff());
    report.max_abs_difference = std::max(report.max_abs_difference, diff);
    report.normalizer = std::max(report.normalizer, mag);
    sum_max_diff += diff;
  }
  report.mean_abs_difference = sum_max_diff / n_samples;
  report.ratio = report.normalizer > 0.0
                     ? report.max_abs_difference / report.normalizer
                     : 0.0;

  // timing over batched calls, cycling through the sampled states
  using clock = std::chrono::steady_clock;
  volatile double sink = 0.0;
  const auto t0 = clock::now();
  for (int i = 0; i < timing_calls; ++i) {
    const FdDerivatives an =
        fd_derivatives(model, act, states[i % n_samples], u);
    sink = sink + an.da_dx(0, 0);
  }
  const auto t1 = clock::now();
  for (int i = 0; i < timing_calls; ++i) {
    const FdDerivatives nd =
        numdiff_dynamics(model, act, states[i % n_samples], u, h);
    sink = sink + nd.da_dx(0, 0);
  }
  const auto t2 = clock::now();
  report.analytic_us_per_call =
      std::chrono::duration<double, std::micro>(t1 - t0).count() / timing_calls;
  report.numdiff_us_per_call =
      std::chrono::duration<double, std::micro>(t2 - t1).count() / timing_calls;
  return report;
}

}  // namespace softarm
