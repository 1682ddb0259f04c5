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

#include "softarm/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace softarm {

namespace {

void check_finite(const Eigen::VectorXd& v, const char* name) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string("non-finite entries in ") + name);
  }
}

// phi_p = q_1 + ... + q_p
Eigen::VectorXd cumsum(const Eigen::VectorXd& q) {
  Eigen::VectorXd phi(q.size());
  double acc = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    acc += q[i];
    phi[i] = acc;
  }
  return phi;
}

// tau_p = y_p + y_{p+1} + ... + y_n  (maps absolute-angle torques to joints)
Eigen::VectorXd suffix_sum(const Eigen::VectorXd& y) {
  Eigen::VectorXd out(y.size());
  double acc = 0.0;
  for (int i = static_cast<int>(y.size()) - 1; i >= 0; --i) {
    acc += y[i];
    out[i] = acc;
  }
  return out;
}

}  // namespace

ChainModel::ChainModel(const Eigen::VectorXd& masses,
                       const Eigen::VectorXd& lengths,
                       const Eigen::VectorXd& com_offsets, double gravity,
                       LinkInertiaMode inertia_mode)
    : n_(static_cast<int>(masses.size())),
      mass_(masses),
      length_(lengths),
      com_(com_offsets),
      gravity_(gravity),
      mode_(inertia_mode) {
  if (n_ < 1) throw std::invalid_argument("chain needs at least one link");
  if (lengths.size() != n_ || com_offsets.size() != n_) {
    throw std::invalid_argument("masses/lengths/com_offsets size mismatch");
  }
  check_finite(masses, "masses");
  check_finite(lengths, "lengths");
  check_finite(com_offsets, "com_offsets");
  if (!std::isfinite(gravity)) {
    throw std::invalid_argument("non-finite gravity");
  }
  for (int i = 0; i < n_; ++i) {
    if (mass_[i] <= 0.0) throw std::invalid_argument("link mass must be > 0");
    if (length_[i] <= 0.0) {
      throw std::invalid_argument("link length must be > 0");
    }
    if (com_[i] <= 0.0 || com_[i] > length_[i]) {
      throw std::invalid_argument("com offset must be in (0, length]");
    }
  }

  // lam_kp: lever of absolute angle p in the COM position of link k.
  auto lam = [&](int k, int p) -> double {
    return (p < k) ? length_[p] : com_[k];
  };
  coupling_ = Eigen::MatrixXd::Zero(n_, n_);
  grav_coeff_ = Eigen::VectorXd::Zero(n_);
  for (int p = 0; p < n_; ++p) {
    for (int r = p; r < n_; ++r) {
      double a = 0.0;
      for (int k = r; k < n_; ++k) a += mass_[k] * lam(k, p) * lam(k, r);
      coupling_(p, r) = a;
      coupling_(r, p) = a;
    }
    double w = 0.0;
    for (int k = p; k < n_; ++k) w += mass_[k] * lam(k, p);
    grav_coeff_[p] = w;
  }
  link_inertia_ = Eigen::VectorXd::Zero(n_);
  if (mode_ == LinkInertiaMode::kRod) {
    link_inertia_ = mass_.cwiseProduct(length_.cwiseAbs2()) / 12.0;
  }
}

ChainModel ChainModel::scaled_masses(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("mass scale must be > 0");
  return ChainModel(mass_ * factor, length_, com_, gravity_, mode_);
}

Eigen::MatrixXd mass_matrix(const ChainModel& model, const Eigen::VectorXd& q) {
  const int n = model.n_links();
  if (q.size() != n) throw std::invalid_argument("mass_matrix: bad q size");
  check_finite(q, "q");
  const Eigen::VectorXd phi = cumsum(q);
  const Eigen::MatrixXd& A = model.coupling();

  Eigen::MatrixXd mtil(n, n);
  for (int p = 0; p < n; ++p) {
    for (int r = 0; r <= p; ++r) {
      const double v = A(p, r) * std::cos(phi[p] - phi[r]);
      mtil(p, r) = v;
      mtil(r, p) = v;
    }
    mtil(p, p) += model.link_inertia()[p];
  }
  // M = L^T Mtil L with L the lower-triangular matrix of ones; fold rows then
  // columns with suffix sums.
  for (int j = 0; j < n; ++j) {
    for (int i = n - 2; i >= 0; --i) mtil(i, j) += mtil(i + 1, j);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = n - 2; j >= 0; --j) mtil(i, j) += mtil(i, j + 1);
  }
  return mtil;
}

Eigen::VectorXd rnea(const ChainModel& model, const Eigen::VectorXd& q,
                     const Eigen::VectorXd& qd, const Eigen::VectorXd& qdd) {
  const int n = model.n_links();
  if (q.size() != n || qd.size() != n || qdd.size() != n) {
    throw std::invalid_argument("rnea: bad input size");
  }
  check_finite(q, "q");
  check_finite(qd, "qd");
  check_finite(qdd, "qdd");
  const Eigen::VectorXd phi = cumsum(q);
  const Eigen::VectorXd phid = cumsum(qd);
  const Eigen::VectorXd phidd = cumsum(qdd);
  const Eigen::MatrixXd& A = model.coupling();
  const double g = model.gravity();

  Eigen::VectorXd y(n);
  for (int p = 0; p < n; ++p) {
    double acc = model.link_inertia()[p] * phidd[p];
    for (int r = 0; r < n; ++r) {
      const double d = phi[p] - phi[r];
      acc += A(p, r) * (std::cos(d) * phidd[r] + std::sin(d) * phid[r] * phid[r]);
    }
    acc += g * model.gravity_coeff()[p] * std::cos(phi[p]);
    y[p] = acc;
  }
  return suffix_sum(y);
}

Eigen::VectorXd bias(const ChainModel& model, const Eigen::VectorXd& q,
                     const Eigen::VectorXd& qd) {
  return rnea(model, q, qd, Eigen::VectorXd::Zero(model.n_links()));
}

RneaDerivatives rnea_derivatives(const ChainModel& model,
                                 const Eigen::VectorXd& q,
                                 const Eigen::VectorXd& qd,
                                 const Eigen::VectorXd& qdd) {
  const int n = model.n_links();
  if (q.size() != n || qd.size() != n || qdd.size() != n) {
    throw std::invalid_argument("rnea_derivatives: bad input size");
  }
  check_finite(q, "q");
  check_finite(qd, "qd");
  check_finite(qdd, "qdd");
  const Eigen::VectorXd phi = cumsum(q);
  const Eigen::VectorXd phid = cumsum(qd);
  const Eigen::VectorXd phidd = cumsum(qdd);
  const Eigen::MatrixXd& A = model.coupling();
  const double g = model.gravity();

  // Derivatives of y_p (torque on absolute angle p) w.r.t. phi_j and phid_j.
  Eigen::MatrixXd dq = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd dqd = Eigen::MatrixXd::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    double diag = 0.0;
    for (int r = 0; r < n; ++r) {
      const double d = phi[p] - phi[r];
      const double s = std::sin(d);
      const double c = std::cos(d);
      // off-diagonal contribution at column r
      dq(p, r) += A(p, r) * (s * phidd[r] - c * phid[r] * phid[r]);
      diag += A(p, r) * (-s * phidd[r] + c * phid[r] * phid[r]);
      dqd(p, r) += 2.0 * A(p, r) * s * phid[r];
    }
    dq(p, p) += diag - g * model.gravity_coeff()[p] * std::sin(phi[p]);
  }
  // Chain rule through phi = L q: dtau/dq = L^T dY L.
  auto fold = [n](const Eigen::MatrixXd& d) {
    Eigen::MatrixXd t = d;
    for (int j = 0; j < n; ++j) {
      for (int i = n - 2; i >= 0; --i) t(i, j) += t(i + 1, j);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = n - 2; j >= 0; --j) t(i, j) += t(i, j + 1);
    }
    return t;
  };
  return RneaDerivatives{fold(dq), fold(dqd)};
}

Eigen::Vector2d fk_ee(const ChainModel& model, const Eigen::VectorXd& q) {
  const int n = model.n_links();
  if (q.size() != n) throw std::invalid_argument("fk_ee: bad q size");
  check_finite(q, "q");
  const Eigen::VectorXd phi = cumsum(q);
  Eigen::Vector2d p(0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    p.x() += model.lengths()[i] * std::cos(phi[i]);
    p.y() += model.lengths()[i] * std::sin(phi[i]);
  }
  return p;
}

Eigen::MatrixXd fk_jacobian(const ChainModel& model, const Eigen::VectorXd& q) {
  const int n = model.n_links();
  if (q.size() != n) throw std::invalid_argument("fk_jacobian: bad q size");
  check_finite(q, "q");
  const Eigen::VectorXd phi = cumsum(q);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2, n);
  // column j collects all links at or beyond joint j
  Eigen::Vector2d acc(0.0, 0.0);
  for (int j = n - 1; j >= 0; --j) {
    acc.x() += -model.lengths()[j] * std::sin(phi[j]);
    acc.y() += model.lengths()[j] * std::cos(phi[j]);
    jac.col(j) = acc;
  }
  return jac;
}

Eigen::Vector2d tip_velocity(const ChainModel& model, const Eigen::VectorXd& q,
                             const Eigen::VectorXd& qd) {
  return fk_jacobian(model, q) * qd;
}

Eigen::MatrixXd tip_velocity_dq(const ChainModel& model,
                                const Eigen::VectorXd& q,
                                const Eigen::VectorXd& qd) {
  const int n = model.n_links();
  if (q.size() != n || qd.size() != n) {
    throw std::invalid_argument("tip_velocity_dq: bad input size");
  }
  const Eigen::VectorXd phi = cumsum(q);
  const Eigen::VectorXd phid = cumsum(qd);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2, n);
  Eigen::Vector2d acc(0.0, 0.0);
  for (int j = n - 1; j >= 0; --j) {
    acc.x() += -model.lengths()[j] * phid[j] * std::cos(phi[j]);
    acc.y() += -model.lengths()[j] * phid[j] * std::sin(phi[j]);
    out.col(j) = acc;
  }
  return out;
}

double kinetic_energy(const ChainModel& model, const Eigen::VectorXd& q,
                      const Eigen::VectorXd& qd) {
  return 0.5 * qd.dot(mass_matrix(model, q) * qd);
}

double potential_energy(const ChainModel& model, const Eigen::VectorXd& q) {
  const Eigen::VectorXd phi = cumsum(q);
  double v = 0.0;
  for (int p = 0; p < model.n_links(); ++p) {
    v += model.gravity() * model.gravity_coeff()[p] * std::sin(phi[p]);
  }
  return v;
}

}  // namespace softarm
