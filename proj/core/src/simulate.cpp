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

#include "softarm/simulate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace softarm {

namespace {

struct PerturbedPlant {
  ChainModel model;
  ActuationSpec act;
};

PerturbedPlant make_plant(const ChainModel& model, const ActuationSpec& act,
                          const Perturbation& pert) {
  if (!(pert.mass_scale > 0.0) || !(pert.stiffness_scale > 0.0)) {
    throw std::invalid_argument("perturbation: scales must be > 0");
  }
  PerturbedPlant plant{model.scaled_masses(pert.mass_scale), act};
  if (plant.act.kind == ActuationKind::kSea) {
    plant.act.stiffness *= pert.stiffness_scale;
  }
  if (plant.act.passive_stiffness.size() > 0) {
    plant.act.passive_stiffness *= pert.stiffness_scale;
  }
  return plant;
}

// Shared stepping loop; `command` produces the commanded control per node.
template <typename CommandFn>
RolloutResult run_rollout(const ChainModel& model, const ActuationSpec& act,
                          const Perturbation& pert, int horizon,
                          const Eigen::VectorXd& x0, double dt,
                          const std::optional<ControlBounds>& bounds,
                          CommandFn command) {
  if (!(dt > 0.0)) throw std::invalid_argument("rollout: dt must be > 0");
  const PerturbedPlant plant = make_plant(model, act, pert);
  const int n = model.n_links();
  const int m = act.n_motors();

  Eigen::VectorXd x = x0;
  if (pert.x0_offset.size() > 0) {
    if (pert.x0_offset.size() != x.size()) {
      throw std::invalid_argument("perturbation: bad x0_offset size");
    }
    x += pert.x0_offset;
  }

  std::mt19937_64 rng(pert.seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  RolloutResult out;
  out.xs.reserve(horizon + 1);
  out.us.reserve(horizon);
  out.xs.push_back(x);
  for (int k = 0; k < horizon; ++k) {
    Eigen::VectorXd u = command(k, x);
    if (bounds) u = u.cwiseMax(bounds->lb).cwiseMin(bounds->ub);
    out.us.push_back(u);

    // actuator disturbances: torque noise enters the plant after clamping,
    // commanded stiffness is realized up to the plant's stiffness scale
    Eigen::VectorXd u_applied = u;
    for (int j = 0; j < m; ++j) {
      const double w = noise(rng);
      if (pert.torque_noise_std > 0.0) {
        u_applied[j] += pert.torque_noise_std * w;
      }
    }
    if (act.is_vsa()) u_applied.tail(m) *= pert.stiffness_scale;

    const SoftState s = SoftState::from_vector(x, n, m);
    const ControlInput c = ControlInput::from_vector(u_applied, plant.act);
    x = integrate(s, forward_dynamics(plant.model, plant.act, s, c), dt)
            .to_vector();
    out.xs.push_back(x);
    if (!x.allFinite()) {
      out.ok = false;
      break;
    }
  }
  return out;
}

}  // namespace

RolloutResult rollout_ff(const ChainModel& model, const ActuationSpec& act,
                         const Perturbation& pert,
                         const std::vector<Eigen::VectorXd>& us,
                         const Eigen::VectorXd& x0, double dt,
                         const std::optional<ControlBounds>& bounds) {
  return run_rollout(model, act, pert, static_cast<int>(us.size()), x0, dt,
                     bounds,
                     [&](int k, const Eigen::VectorXd&) { return us[k]; });
}

RolloutResult rollout_fb(const ChainModel& model, const ActuationSpec& act,
                         const Perturbation& pert,
                         const std::vector<Eigen::VectorXd>& us_ref,
                         const std::vector<Eigen::VectorXd>& xs_ref,
                         const std::vector<Eigen::MatrixXd>& gains,
                         const Eigen::VectorXd& x0, double dt,
                         const std::optional<ControlBounds>& bounds) {
  const int horizon = static_cast<int>(us_ref.size());
  if (static_cast<int>(xs_ref.size()) != horizon + 1 ||
      static_cast<int>(gains.size()) < horizon) {
    throw std::invalid_argument("rollout_fb: reference size mismatch");
  }
  return run_rollout(model, act, pert, horizon, x0, dt, bounds,
                     [&](int k, const Eigen::VectorXd& x) -> Eigen::VectorXd {
                       return us_ref[k] + gains[k] * (x - xs_ref[k]);
                     });
}

Eigen::VectorXd rms_error(const std::vector<Eigen::VectorXd>& xs,
                          const std::vector<Eigen::VectorXd>& xs_ref,
                          int n_joints) {
  if (xs.size() != xs_ref.size() || xs.empty()) {
    throw std::invalid_argument("rms_error: trajectory size mismatch");
  }
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(n_joints);
  for (size_t k = 0; k < xs.size(); ++k) {
    const auto err = xs[k].head(n_joints) - xs_ref[k].head(n_joints);
    acc += err.cwiseAbs2();
  }
  return (acc / static_cast<double>(xs.size())).cwiseSqrt();
}

double control_energy(const std::vector<Eigen::VectorXd>& us, int n_motors) {
  double e = 0.0;
  for (const auto& u : us) {
    if (u.size() < n_motors) {
      throw std::invalid_argument("control_energy: control smaller than m");
    }
    e += u.head(n_motors).squaredNorm();
  }
  return e;
}

}  // namespace softarm
