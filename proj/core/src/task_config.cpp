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

#include "softarm/task_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace softarm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    throw ConfigError("expected a number, got '" + v + "'", line);
  }
}

int parse_int(const std::string& v, int line) {
  try {
    size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return i;
  } catch (...) {
    throw ConfigError("expected an integer, got '" + v + "'", line);
  }
}

std::uint64_t parse_u64(const std::string& v, int line) {
  try {
    size_t pos = 0;
    const unsigned long long u = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return u;
  } catch (...) {
    throw ConfigError("expected an unsigned integer, got '" + v + "'", line);
  }
}

Eigen::VectorXd parse_vector(const std::string& v, int line) {
  std::istringstream ss(v);
  std::vector<double> vals;
  std::string tok;
  while (ss >> tok) vals.push_back(parse_double(tok, line));
  if (vals.empty()) throw ConfigError("expected at least one number", line);
  return Eigen::Map<Eigen::VectorXd>(vals.data(), vals.size());
}

std::vector<int> parse_int_list(const std::string& v, int line) {
  std::istringstream ss(v);
  std::vector<int> vals;
  std::string tok;
  while (ss >> tok) vals.push_back(parse_int(tok, line));
  if (vals.empty()) throw ConfigError("expected at least one integer", line);
  return vals;
}

// known sections and keys; everything else is rejected
const std::map<std::string, std::set<std::string>>& key_table() {
  static const std::map<std::string, std::set<std::string>> table = {
      {"", {"task", "seed"}},
      {"chain",
       {"links", "masses", "lengths", "com_offsets", "gravity", "inertia"}},
      {"actuation",
       {"kind", "actuated_joints", "motor_inertia", "stiffness", "sigma_min",
        "sigma_max", "sigma_ref", "passive_stiffness", "tau_max"}},
      {"horizon", {"duration", "dt"}},
      {"costs",
       {"state_weight", "control_weight", "goal_weight", "terminal_weight",
        "vsa_weight", "vsa_lambda", "tip_velocity_weight"}},
      {"target", {"point", "posture", "tip_velocity"}},
      {"solver",
       {"algorithm", "max_iterations", "stop_tolerance", "gap_tolerance",
        "reg_init", "reg_min", "reg_max", "reg_factor"}},
      {"study", {"stiffness_sweep", "samples", "fd_step", "timing_calls"}},
      {"perturbation",
       {"draws", "mass_scale_min", "mass_scale_max", "stiffness_scale_min",
        "stiffness_scale_max", "torque_noise_std"}},
      {"output", {"dir"}},
  };
  return table;
}

Eigen::VectorXd broadcast(const Eigen::VectorXd& v, int size,
                          const std::string& name) {
  if (v.size() == size) return v;
  if (v.size() == 1) return Eigen::VectorXd::Constant(size, v[0]);
  throw ConfigError(name + ": expected 1 or " + std::to_string(size) +
                    " values, got " + std::to_string(v.size()));
}

}  // namespace

std::string to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::kRegulation: return "regulation";
    case TaskKind::kSwingUp: return "swing-up";
    case TaskKind::kRigidVsSoft: return "rigid-vs-soft";
    case TaskKind::kDerivativeStudy: return "derivative-study";
    case TaskKind::kEnergyStudy: return "energy-study";
  }
  return "?";
}

TaskConfig parse_task_config_text(const std::string& text) {
  TaskConfig cfg;
  // raw vectors kept for post-parse broadcasting
  std::map<std::string, Eigen::VectorXd> raw;
  std::istringstream stream(text);
  std::string rawline;
  std::string section;
  int line_no = 0;
  bool saw_task = false;

  while (std::getline(stream, rawline)) {
    ++line_no;
    const auto hash = rawline.find('#');
    std::string line = trim(hash == std::string::npos
                                ? rawline
                                : rawline.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("malformed section header", line_no);
      }
      section = trim(line.substr(1, line.size() - 2));
      if (key_table().find(section) == key_table().end()) {
        throw ConfigError("unknown section [" + section + "]", line_no);
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value'", line_no);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError("missing value for '" + key + "'", line_no);

    const auto sec_it = key_table().find(section);
    if (sec_it == key_table().end() || !sec_it->second.count(key)) {
      const std::string where =
          section.empty() ? "top level" : "section [" + section + "]";
      throw ConfigError("unknown key '" + key + "' in " + where, line_no);
    }

    if (section.empty()) {
      if (key == "task") {
        saw_task = true;
        if (value == "regulation") cfg.task = TaskKind::kRegulation;
        else if (value == "swing-up") cfg.task = TaskKind::kSwingUp;
        else if (value == "rigid-vs-soft") cfg.task = TaskKind::kRigidVsSoft;
        else if (value == "derivative-study") cfg.task = TaskKind::kDerivativeStudy;
        else if (value == "energy-study") cfg.task = TaskKind::kEnergyStudy;
        else throw ConfigError("unknown task kind '" + value + "'", line_no);
      } else if (key == "seed") {
        cfg.seed = parse_u64(value, line_no);
      }
    } else if (section == "chain") {
      if (key == "links") cfg.links = parse_int(value, line_no);
      else if (key == "gravity") cfg.gravity = parse_double(value, line_no);
      else if (key == "inertia") {
        if (value == "point-mass") cfg.inertia = LinkInertiaMode::kPointMass;
        else if (value == "rod") cfg.inertia = LinkInertiaMode::kRod;
        else throw ConfigError("inertia must be point-mass or rod", line_no);
      } else {
        raw["chain." + key] = parse_vector(value, line_no);
      }
    } else if (section == "actuation") {
      if (key == "kind") {
        if (value == "sea") cfg.kind = ActuationKind::kSea;
        else if (value == "vsa") cfg.kind = ActuationKind::kVsa;
        else throw ConfigError("kind must be sea or vsa", line_no);
      } else if (key == "actuated_joints") {
        cfg.actuated_joints = parse_int_list(value, line_no);
      } else if (key == "sigma_ref") {
        cfg.sigma_ref = parse_double(value, line_no);
      } else if (key == "tau_max") {
        cfg.tau_max = parse_double(value, line_no);
      } else {
        raw["actuation." + key] = parse_vector(value, line_no);
      }
    } else if (section == "horizon") {
      if (key == "duration") cfg.duration = parse_double(value, line_no);
      else cfg.dt = parse_double(value, line_no);
    } else if (section == "costs") {
      const double w = parse_double(value, line_no);
      if (key == "state_weight") cfg.state_weight = w;
      else if (key == "control_weight") cfg.control_weight = w;
      else if (key == "goal_weight") cfg.goal_weight = w;
      else if (key == "terminal_weight") cfg.terminal_weight = w;
      else if (key == "vsa_weight") cfg.vsa_weight = w;
      else if (key == "vsa_lambda") cfg.vsa_lambda = w;
      else cfg.tip_velocity_weight = w;
    } else if (section == "target") {
      const Eigen::VectorXd v = parse_vector(value, line_no);
      if (key == "point") {
        if (v.size() != 2) throw ConfigError("point needs two values", line_no);
        cfg.point = Eigen::Vector2d(v[0], v[1]);
      } else if (key == "posture") {
        cfg.posture = v;
      } else {
        if (v.size() != 2) {
          throw ConfigError("tip_velocity needs two values", line_no);
        }
        cfg.tip_velocity = Eigen::Vector2d(v[0], v[1]);
      }
    } else if (section == "solver") {
      if (key == "algorithm") {
        if (value == "fddp") cfg.solver.algorithm = SolverAlgorithm::kFddp;
        else if (value == "boxfddp") cfg.solver.algorithm = SolverAlgorithm::kBoxFddp;
        else throw ConfigError("algorithm must be fddp or boxfddp", line_no);
      } else if (key == "max_iterations") {
        cfg.solver.max_iterations = parse_int(value, line_no);
      } else if (key == "stop_tolerance") {
        cfg.solver.stop_tolerance = parse_double(value, line_no);
      } else if (key == "gap_tolerance") {
        cfg.solver.gap_tolerance = parse_double(value, line_no);
      } else if (key == "reg_init") {
        cfg.solver.reg_init = parse_double(value, line_no);
      } else if (key == "reg_min") {
        cfg.solver.reg_min = parse_double(value, line_no);
      } else if (key == "reg_max") {
        cfg.solver.reg_max = parse_double(value, line_no);
      } else {
        cfg.solver.reg_factor = parse_double(value, line_no);
      }
    } else if (section == "study") {
      if (key == "stiffness_sweep") {
        cfg.stiffness_sweep = parse_vector(value, line_no);
      } else if (key == "samples") {
        cfg.samples = parse_int(value, line_no);
      } else if (key == "fd_step") {
        cfg.fd_step = parse_double(value, line_no);
      } else {
        cfg.timing_calls = parse_int(value, line_no);
      }
    } else if (section == "perturbation") {
      cfg.has_perturbation = true;
      const double w = parse_double(value, line_no);
      if (key == "draws") cfg.draws = parse_int(value, line_no);
      else if (key == "mass_scale_min") cfg.mass_scale_min = w;
      else if (key == "mass_scale_max") cfg.mass_scale_max = w;
      else if (key == "stiffness_scale_min") cfg.stiffness_scale_min = w;
      else if (key == "stiffness_scale_max") cfg.stiffness_scale_max = w;
      else cfg.torque_noise_std = w;
    } else if (section == "output") {
      cfg.out_dir = value;
    }
  }

  if (!saw_task) throw ConfigError("missing required key 'task'");
  if (cfg.links < 1) {
    throw ConfigError("chain: missing or invalid required key 'links'");
  }

  // broadcast per-link / per-motor vectors now that sizes are known
  const int n = cfg.links;
  if (cfg.actuated_joints.empty()) {
    cfg.actuated_joints.resize(n);
    for (int i = 0; i < n; ++i) cfg.actuated_joints[i] = i;
  }
  const int m = static_cast<int>(cfg.actuated_joints.size());

  auto need = [&](const char* key) -> Eigen::VectorXd {
    const auto it = raw.find(key);
    if (it == raw.end()) {
      throw ConfigError(std::string("missing required key '") +
                        std::string(key).substr(std::string(key).find('.') + 1) +
                        "' in section [" +
                        std::string(key).substr(0, std::string(key).find('.')) +
                        "]");
    }
    return it->second;
  };
  cfg.masses = broadcast(need("chain.masses"), n, "masses");
  cfg.lengths = broadcast(need("chain.lengths"), n, "lengths");
  cfg.com_offsets = broadcast(need("chain.com_offsets"), n, "com_offsets");

  if (raw.count("actuation.motor_inertia")) {
    cfg.motor_inertia = broadcast(raw["actuation.motor_inertia"], m, "motor_inertia");
  }
  if (raw.count("actuation.stiffness")) {
    cfg.stiffness = broadcast(raw["actuation.stiffness"], m, "stiffness");
  }
  if (raw.count("actuation.sigma_min")) {
    cfg.sigma_min = broadcast(raw["actuation.sigma_min"], m, "sigma_min");
  }
  if (raw.count("actuation.sigma_max")) {
    cfg.sigma_max = broadcast(raw["actuation.sigma_max"], m, "sigma_max");
  }
  if (raw.count("actuation.passive_stiffness")) {
    cfg.passive_stiffness =
        broadcast(raw["actuation.passive_stiffness"], n, "passive_stiffness");
  }
  return cfg;
}

TaskConfig parse_task_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_task_config_text(buffer.str());
}

void TaskConfig::validate() const {
  if (links < 1) throw ConfigError("chain: links must be >= 1");
  if (gravity < 0.0) throw ConfigError("chain: gravity must be >= 0");

  const bool needs_horizon = task != TaskKind::kDerivativeStudy;
  if (needs_horizon) {
    if (!dt.has_value()) {
      throw ConfigError("horizon: missing required key 'dt'");
    }
    if (!(*dt > 0.0)) throw ConfigError("horizon: dt must be > 0");
    if (!duration.has_value()) {
      throw ConfigError("horizon: missing required key 'duration'");
    }
    if (!(*duration >= *dt)) {
      throw ConfigError("horizon: duration must be >= dt");
    }
  }

  const int m = static_cast<int>(actuated_joints.size());
  const bool underactuated = m < links;
  const bool needs_motors = task != TaskKind::kRigidVsSoft;
  if (motor_inertia.size() == 0 &&
      (needs_motors || stiffness_sweep.has_value())) {
    throw ConfigError("actuation: missing required key 'motor_inertia'");
  }
  if (underactuated && !passive_stiffness.has_value()) {
    throw ConfigError("actuation: missing required key 'passive_stiffness'");
  }

  auto require_sea = [&]() {
    if (!stiffness.has_value()) {
      throw ConfigError("actuation: missing required key 'stiffness'");
    }
  };
  auto require_vsa = [&]() {
    if (!sigma_min.has_value() || !sigma_max.has_value()) {
      throw ConfigError(
          "actuation: missing required key 'sigma_min'/'sigma_max'");
    }
  };
  auto require_point = [&]() {
    if (!point.has_value()) {
      throw ConfigError("target: missing required key 'point'");
    }
  };

  switch (task) {
    case TaskKind::kRegulation:
      if (kind == ActuationKind::kSea) require_sea();
      else require_vsa();
      require_point();
      break;
    case TaskKind::kSwingUp:
      if (kind == ActuationKind::kSea) require_sea();
      else require_vsa();
      if (!posture.has_value()) {
        throw ConfigError("target: missing required key 'posture'");
      }
      if (posture->size() != links) {
        throw ConfigError("target: posture needs one angle per link");
      }
      break;
    case TaskKind::kRigidVsSoft:
      require_point();
      if (!stiffness_sweep.has_value() || stiffness_sweep->size() == 0) {
        throw ConfigError("study: missing required key 'stiffness_sweep'");
      }
      if ((stiffness_sweep->array() <= 0.0).any()) {
        throw ConfigError("study: stiffness_sweep values must be > 0");
      }
      break;
    case TaskKind::kDerivativeStudy:
      if (kind == ActuationKind::kSea) require_sea();
      else require_vsa();
      if (samples < 1) throw ConfigError("study: samples must be >= 1");
      if (!(fd_step > 0.0)) throw ConfigError("study: fd_step must be > 0");
      if (timing_calls < 1) {
        throw ConfigError("study: timing_calls must be >= 1");
      }
      break;
    case TaskKind::kEnergyStudy:
      require_sea();
      require_vsa();
      if (!point.has_value() && !posture.has_value()) {
        throw ConfigError("target: missing required key 'point' or 'posture'");
      }
      if (posture.has_value() && posture->size() != links) {
        throw ConfigError("target: posture needs one angle per link");
      }
      break;
  }

  if (has_perturbation) {
    if (draws < 1) throw ConfigError("perturbation: draws must be >= 1");
    if (!(mass_scale_min > 0.0) || mass_scale_max < mass_scale_min) {
      throw ConfigError("perturbation: bad mass scale range");
    }
    if (!(stiffness_scale_min > 0.0) ||
        stiffness_scale_max < stiffness_scale_min) {
      throw ConfigError("perturbation: bad stiffness scale range");
    }
    if (torque_noise_std < 0.0) {
      throw ConfigError("perturbation: torque_noise_std must be >= 0");
    }
  }

  // constructing the objects runs their own invariant checks
  make_chain();
  if (task == TaskKind::kEnergyStudy) {
    make_actuation(ActuationKind::kSea);
    make_actuation(ActuationKind::kVsa);
  } else if (task != TaskKind::kRigidVsSoft) {
    make_actuation(kind);
  } else if (motor_inertia.size() > 0) {
    // replay plants are SEA with swept stiffness; use a placeholder value
    TaskConfig tmp = *this;
    tmp.stiffness = Eigen::VectorXd::Ones(m);
    tmp.make_actuation(ActuationKind::kSea);
  }
  try {
    solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("solver: ") + e.what());
  }
}

ChainModel TaskConfig::make_chain() const {
  try {
    return ChainModel(masses, lengths, com_offsets, gravity, inertia);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("chain: ") + e.what());
  }
}

ActuationSpec TaskConfig::make_actuation(ActuationKind want) const {
  ActuationSpec spec;
  spec.kind = want;
  spec.actuated_joints = actuated_joints;
  spec.motor_inertia = motor_inertia;
  if (want == ActuationKind::kSea) {
    if (stiffness.has_value()) spec.stiffness = *stiffness;
  } else {
    if (sigma_min.has_value()) spec.sigma_min = *sigma_min;
    if (sigma_max.has_value()) spec.sigma_max = *sigma_max;
    spec.sigma_ref = sigma_ref.value_or(
        sigma_min.has_value() ? sigma_min->minCoeff() : 0.0);
  }
  if (passive_stiffness.has_value()) {
    spec.passive_stiffness = *passive_stiffness;
  }
  try {
    spec.validate(links);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("actuation: ") + e.what());
  }
  return spec;
}

}  // namespace softarm
