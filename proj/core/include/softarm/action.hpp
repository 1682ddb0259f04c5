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

#ifndef SOFTARM_ACTION_HPP_
#define SOFTARM_ACTION_HPP_

#include <Eigen/Dense>
#include <vector>

#include "softarm/costs.hpp"
#include "softarm/soft_dynamics.hpp"

namespace softarm {

/// First-order dynamics and second-order cost expansion of one knot.
struct ActionDerivatives {
  Eigen::MatrixXd fx, fu;
  Eigen::VectorXd lx, lu;
  Eigen::MatrixXd lxx, luu, lxu;

  void resize(int nx, int nu);
};

/// One discrete node of a shooting problem: xnext = f(x, u) together with the
/// running cost of the interval. Implementations must be pure (no internal
/// state mutated by calc/calc_diff).
class ActionModel {
 public:
  virtual ~ActionModel() = default;
  virtual int nx() const = 0;
  virtual int nu() const = 0;
  virtual void calc(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                    Eigen::VectorXd& xnext, double& cost) const = 0;
  virtual void calc_diff(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                         ActionDerivatives& d) const = 0;
};

/// Terminal cost of a shooting problem.
class TerminalCost {
 public:
  virtual ~TerminalCost() = default;
  virtual int nx() const = 0;
  virtual double calc(const Eigen::VectorXd& x) const = 0;
  virtual void calc_diff(const Eigen::VectorXd& x, Eigen::VectorXd& lx,
                         Eigen::MatrixXd& lxx) const = 0;
};

/// Elastic chain node: semi-implicit Euler step of the block forward
/// dynamics, running cost = dt * sum of the terms (rectangle rule).
class SoftActionModel : public ActionModel {
 public:
  SoftActionModel(ChainModel model, ActuationSpec act,
                  std::vector<CostTerm> terms, double dt);

  int nx() const override { return layout_.nx; }
  int nu() const override { return layout_.nu; }
  double dt() const { return dt_; }
  const ChainModel& model() const { return model_; }
  const ActuationSpec& actuation() const { return act_; }
  const StateLayout& layout() const { return layout_; }

  void calc(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
            Eigen::VectorXd& xnext, double& cost) const override;
  void calc_diff(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                 ActionDerivatives& d) const override;

 private:
  ChainModel model_;
  ActuationSpec act_;
  std::vector<CostTerm> terms_;
  double dt_;
  StateLayout layout_;
};

/// Rigid chain node (direct joint torques at the actuated joints, passive
/// springs elsewhere); used by the motivational and energy studies.
class RigidActionModel : public ActionModel {
 public:
  RigidActionModel(ChainModel model, ActuationSpec act,
                   std::vector<CostTerm> terms, double dt);

  int nx() const override { return layout_.nx; }
  int nu() const override { return layout_.nu; }
  double dt() const { return dt_; }
  const ChainModel& model() const { return model_; }
  const ActuationSpec& actuation() const { return act_; }
  const StateLayout& layout() const { return layout_; }

  void calc(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
            Eigen::VectorXd& xnext, double& cost) const override;
  void calc_diff(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                 ActionDerivatives& d) const override;

 private:
  ChainModel model_;
  ActuationSpec act_;
  std::vector<CostTerm> terms_;
  double dt_;
  StateLayout layout_;
};

/// Terminal cost as a sum of cost terms evaluated with a zero control.
class TermCostSum : public TerminalCost {
 public:
  TermCostSum(ChainModel model, StateLayout layout, std::vector<CostTerm> terms);

  int nx() const override { return layout_.nx; }
  double calc(const Eigen::VectorXd& x) const override;
  void calc_diff(const Eigen::VectorXd& x, Eigen::VectorXd& lx,
                 Eigen::MatrixXd& lxx) const override;

 private:
  ChainModel model_;
  StateLayout layout_;
  std::vector<CostTerm> terms_;
};

}  // namespace softarm

#endif  // SOFTARM_ACTION_HPP_
