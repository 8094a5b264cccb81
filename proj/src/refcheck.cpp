// Copyright 2025 The hubsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hubsim/refcheck.hpp"

#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace hubsim {

namespace {

constexpr Eigen::Index kMaxDim = 4096;

void check_hermitian(const DenseMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("dense_expm: matrix is not square");
  if (h.rows() > kMaxDim) throw std::invalid_argument("dense_expm: dimension above 4096");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("dense_expm: matrix is not Hermitian");
}

typedef std::vector<cplx> OdeState;

}  // namespace

DenseMatrix dense_expm(const DenseMatrix& h, double t) {
  check_hermitian(h);
  if (h.rows() == 0) return h;
  const DenseMatrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(hs);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense_expm: eigensolver failed");
  const Eigen::VectorXd& w = es.eigenvalues();
  DenseVector ph(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) ph(i) = std::exp(cplx(0.0, -w(i) * t));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

DenseVector rotated_frame_state(const HubSparseGraph& g, double t, const DenseVector& psi0,
                                double tol) {
  const Eigen::Index n = g.n_nodes();
  if (n > kMaxDim) throw std::invalid_argument("rotated_reference: dimension above 4096");
  if (psi0.size() != n) throw std::invalid_argument("rotated_reference: state size mismatch");
  const Eigen::MatrixXd gm = g.dense_G().cast<double>();
  const Eigen::MatrixXd h2 = g.dense_adjacency().cast<double>() - gm;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gm);
  const Eigen::MatrixXd v = es.eigenvectors();
  const Eigen::VectorXd lam = es.eigenvalues();

  auto rhs = [&](const OdeState& x, OdeState& dxdt, double s) {
    Eigen::Map<const DenseVector> xv(x.data(), n);
    DenseVector y = v.transpose() * xv;
    for (Eigen::Index i = 0; i < n; ++i) y(i) *= std::exp(cplx(0.0, -lam(i) * s));
    DenseVector z = v.transpose() * (h2 * (v * y));
    for (Eigen::Index i = 0; i < n; ++i) z(i) *= std::exp(cplx(0.0, lam(i) * s));
    Eigen::Map<DenseVector> out(dxdt.data(), n);
    out = cplx(0.0, -1.0) * (v * z);
  };

  OdeState x(psi0.data(), psi0.data() + n);
  if (t == 0.0) return psi0;
  namespace ode = boost::numeric::odeint;
  // odeint controls the per-step error; tighten so the accumulated error stays under tol
  const double step_tol = std::max(1e-15, 0.01 * tol / std::max(1.0, std::abs(t)));
  auto stepper =
      ode::make_controlled(step_tol, step_tol, ode::runge_kutta_fehlberg78<OdeState>());
  try {
    ode::integrate_adaptive(stepper, rhs, x, 0.0, t, std::min(0.01, std::abs(t)));
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("rotated_reference: step-size underflow: ") + e.what());
  }
  return Eigen::Map<DenseVector>(x.data(), n);
}

DenseVector rotated_reference(const HubSparseGraph& g, double t, const DenseVector& psi0,
                              double tol) {
  DenseVector xt = rotated_frame_state(g, t, psi0, tol);
  const Eigen::MatrixXd gm = g.dense_G().cast<double>();
  return dense_expm(gm.cast<cplx>(), t) * xt;
}

double distance(const DenseVector& a, const DenseVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("distance: dimension mismatch");
  return (a - b).norm();
}

double distance_phase_insensitive(const DenseVector& a, const DenseVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("distance: dimension mismatch");
  double ov = std::abs(a.dot(b));
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * ov));
}

}  // namespace hubsim
