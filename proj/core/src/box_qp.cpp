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

#include "softarm/box_qp.hpp"

#include <cmath>
#include <stdexcept>

namespace softarm {

namespace {

Eigen::VectorXd clamp(const Eigen::VectorXd& x, const Eigen::VectorXd& lb,
                      const Eigen::VectorXd& ub) {
  return x.cwiseMax(lb).cwiseMin(ub);
}

double quad_value(const Eigen::MatrixXd& H, const Eigen::VectorXd& g,
                  const Eigen::VectorXd& x) {
  return 0.5 * x.dot(H * x) + g.dot(x);
}

}  // namespace

BoxQpResult box_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& g,
                   const Eigen::VectorXd& lb, const Eigen::VectorXd& ub,
                   const Eigen::VectorXd& x_init,
                   const BoxQpSettings& settings) {
  const int n = static_cast<int>(g.size());
  if (H.rows() != n || H.cols() != n || lb.size() != n || ub.size() != n ||
      x_init.size() != n) {
    throw std::invalid_argument("box_qp: inconsistent dimensions");
  }
  if (((ub - lb).array() < 0.0).any()) {
    throw std::invalid_argument("box_qp: lb must be <= ub");
  }

  BoxQpResult res;
  res.x = clamp(x_init, lb, ub);
  double value = quad_value(H, g, res.x);

  std::vector<int> prev_clamped;
  bool factorized = false;

  for (int iter = 0; iter < settings.max_iterations; ++iter) {
    res.iterations = iter + 1;
    const Eigen::VectorXd grad = g + H * res.x;

    res.clamped_set.clear();
    res.free_set.clear();
    for (int i = 0; i < n; ++i) {
      const bool at_lower =
          res.x[i] <= lb[i] + settings.clamp_tolerance && grad[i] > 0.0;
      const bool at_upper =
          res.x[i] >= ub[i] - settings.clamp_tolerance && grad[i] < 0.0;
      if (at_lower || at_upper) {
        res.clamped_set.push_back(i);
      } else {
        res.free_set.push_back(i);
      }
    }
    const int nf = static_cast<int>(res.free_set.size());
    if (nf == 0) {
      res.success = true;
      return res;
    }

    double gnorm = 0.0;
    for (int i : res.free_set) gnorm = std::max(gnorm, std::abs(grad[i]));
    if (gnorm < settings.grad_tolerance) {
      if (!factorized || res.clamped_set != prev_clamped) {
        Eigen::MatrixXd hff(nf, nf);
        for (int a = 0; a < nf; ++a) {
          for (int b = 0; b < nf; ++b) {
            hff(a, b) = H(res.free_set[a], res.free_set[b]);
          }
        }
        res.free_llt.compute(hff);
      }
      res.success = true;
      return res;
    }

    if (!factorized || res.clamped_set != prev_clamped) {
      Eigen::MatrixXd hff(nf, nf);
      for (int a = 0; a < nf; ++a) {
        for (int b = 0; b < nf; ++b) {
          hff(a, b) = H(res.free_set[a], res.free_set[b]);
        }
      }
      res.free_llt.compute(hff);
      if (res.free_llt.info() != Eigen::Success) {
        res.success = false;
        return res;
      }
      factorized = true;
      prev_clamped = res.clamped_set;
    }

    // Newton step in the free subspace around the clamped coordinates:
    // gf + Hff xf_new + Hfc xc = 0.
    Eigen::VectorXd rhs(nf);
    for (int a = 0; a < nf; ++a) {
      const int i = res.free_set[a];
      double v = g[i];
      for (int c : res.clamped_set) v += H(i, c) * res.x[c];
      rhs[a] = v;
    }
    const Eigen::VectorXd xf_new = -res.free_llt.solve(rhs);

    Eigen::VectorXd search = Eigen::VectorXd::Zero(n);
    double sdotg = 0.0;
    for (int a = 0; a < nf; ++a) {
      const int i = res.free_set[a];
      search[i] = xf_new[a] - res.x[i];
      sdotg += search[i] * grad[i];
    }
    if (sdotg >= 0.0) {
      // no descent left in the free subspace
      res.success = true;
      return res;
    }

    double step = 1.0;
    Eigen::VectorXd xc = clamp(res.x + step * search, lb, ub);
    double vc = quad_value(H, g, xc);
    while ((vc - value) / (step * sdotg) < settings.armijo) {
      step *= settings.step_decrease;
      if (step < settings.min_step) {
        res.success = false;
        return res;
      }
      xc = clamp(res.x + step * search, lb, ub);
      vc = quad_value(H, g, xc);
    }

    const double improvement = value - vc;
    res.x = xc;
    value = vc;
    if (improvement < settings.rel_improvement * (1.0 + std::abs(value))) {
      res.success = true;
      return res;
    }
  }
  res.success = true;  // hit the iteration cap with a usable iterate
  return res;
}

}  // namespace softarm
