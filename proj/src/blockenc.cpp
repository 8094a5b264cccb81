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

#include "hubsim/blockenc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hubsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Slice> pack_args(const Circuit& callee, const std::string& anc, int base) {
  return ancilla_args(callee, anc, base);
}

RegisterList with_optional(std::initializer_list<std::pair<std::string, int>> regs) {
  RegisterList out;
  for (const auto& r : regs)
    if (r.second > 0) out.push_back(r);
  return out;
}

}  // namespace

std::vector<Slice> ancilla_args(const Circuit& callee, const std::string& anc, int base,
                                const Slice& sys) {
  int top = base + callee.total_width() - callee.width("sys");
  std::vector<Slice> args;
  for (const auto& [name, w] : callee.registers()) {
    if (name == "sys") {
      args.push_back(sys);
    } else {
      top -= w;
      args.emplace_back(anc, top, w);
    }
  }
  return args;
}

BlockEncoding make_block_encoding(CircuitPtr c, double alpha, double eps) {
  const auto& regs = c->registers();
  if (regs.empty() || regs.back().first != "sys")
    throw std::invalid_argument(c->name() + ": block-encoding circuits end with register 'sys'");
  if (!(alpha > 0)) throw std::invalid_argument(c->name() + ": alpha must be positive");
  BlockEncoding be;
  be.n = regs.back().second;
  be.m = c->total_width() - be.n;
  be.alpha = alpha;
  be.eps = eps;
  be.unitary = std::move(c);
  return be;
}

BlockEncoding identity_encoding(int n, int m) {
  auto c = std::make_shared<Circuit>("I", with_optional({{"anc", m}, {"sys", n}}));
  return make_block_encoding(c, 1.0);
}

Verification verify(const BlockEncoding& be, const DenseMatrix& target) {
  DenseMatrix b = be.block();
  if (b.rows() != target.rows() || b.cols() != target.cols())
    throw std::invalid_argument("verify: target is " + std::to_string(target.rows()) + "x" +
                                std::to_string(target.cols()) + ", block is " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  Verification v;
  v.error = spectral_norm(target - be.alpha * b);
  v.bound = be.eps + 1e-9;
  v.passed = v.error <= v.bound;
  return v;
}

DenseMatrix unitary_with_first_column(const DenseVector& col) {
  const Eigen::Index d = col.size();
  const double nrm = col.norm();
  if (std::abs(nrm - 1.0) > 1e-12) throw std::invalid_argument("column must be a unit vector");
  cplx ph = std::abs(col(0)) > 1e-300 ? col(0) / std::abs(col(0)) : cplx(1.0);
  DenseVector y = col / ph;  // y(0) real, >= 0
  DenseVector e0 = DenseVector::Zero(d);
  e0(0) = 1.0;
  DenseVector w = e0 - y;
  DenseMatrix h = DenseMatrix::Identity(d, d);
  double wn = w.squaredNorm();
  if (wn > 1e-30) h -= (2.0 / wn) * w * w.adjoint();
  return ph * h;
}

PreparePair make_prepare(const std::vector<cplx>& weights, int k_qubits) {
  const Eigen::Index d = Eigen::Index{1} << k_qubits;
  if (static_cast<Eigen::Index>(weights.size()) > d)
    throw std::invalid_argument("too many weights for the index register");
  double norm1 = 0.0;
  for (const auto& w : weights) norm1 += std::abs(w);
  if (norm1 == 0.0) throw std::invalid_argument("prepare: all weights are zero");
  DenseVector a = DenseVector::Zero(d), b = DenseVector::Zero(d);
  for (size_t j = 0; j < weights.size(); ++j) {
    double amp = std::sqrt(std::abs(weights[j]) / norm1);
    a(j) = amp;
    b(j) = amp * (std::abs(weights[j]) > 0 ? std::conj(weights[j] / std::abs(weights[j])) : 1.0);
  }
  return {unitary_with_first_column(a), unitary_with_first_column(b)};
}

BlockEncoding lcu(const std::vector<double>& coeffs, const std::vector<BlockEncoding>& bes) {
  if (bes.empty()) throw std::invalid_argument("lcu: empty list");
  if (coeffs.size() != bes.size()) throw std::invalid_argument("lcu: coefficient count mismatch");
  const int n = bes[0].n;
  int mmax = 0;
  double ynorm = 0.0, emax = 0.0, wnorm = 0.0;
  std::vector<cplx> w;
  for (size_t j = 0; j < bes.size(); ++j) {
    if (bes[j].n != n) throw std::invalid_argument("lcu: system width mismatch");
    mmax = std::max(mmax, bes[j].circuit_ancillas());
    ynorm += std::abs(coeffs[j]);
    emax = std::max(emax, bes[j].eps);
    w.emplace_back(coeffs[j] * bes[j].alpha);
    wnorm += std::abs(coeffs[j]) * bes[j].alpha;
  }
  if (wnorm == 0.0) throw std::invalid_argument("lcu: all coefficients vanish");
  int mlog = 0;
  for (const auto& be : bes) mlog = std::max(mlog, be.m);
  const int k = ceil_log2(static_cast<std::int64_t>(bes.size()));

  auto c = std::make_shared<Circuit>("LCU", with_optional({{"idx", k}, {"anc", mmax}, {"sys", n}}));
  if (k == 0) {
    c->call(bes[0].unitary, pack_args(*bes[0].unitary, "anc", 0));
    if (coeffs[0] < 0) c->global_phase(-1.0);
  } else {
    PreparePair pp = make_prepare(w, k);
    c->unitary("V", pp.v, {"idx"});
    for (size_t j = 0; j < bes.size(); ++j) {
      if (w[j] == 0.0) continue;
      c->call(bes[j].unitary, pack_args(*bes[j].unitary, "anc", 0), false,
              {Control{Slice("idx"), j}});
    }
    c->unitary("V'^dg", pp.v_prime.adjoint(), {"idx"});
  }
  BlockEncoding out = make_block_encoding(c, wnorm, ynorm * emax);
  out.m = mlog + k;
  return out;
}

BlockEncoding product(const BlockEncoding& be1, const BlockEncoding& be2) {
  if (be1.n != be2.n) throw std::invalid_argument("product: system width mismatch");
  const int m1 = be1.circuit_ancillas(), m2 = be2.circuit_ancillas();
  auto c = std::make_shared<Circuit>("product",
                                     with_optional({{"a1", m1}, {"a2", m2}, {"sys", be1.n}}));
  c->call(be2.unitary, pack_args(*be2.unitary, "a2", 0));
  c->call(be1.unitary, pack_args(*be1.unitary, "a1", 0));
  BlockEncoding out =
      make_block_encoding(c, be1.alpha * be2.alpha, be1.alpha * be2.eps + be2.alpha * be1.eps);
  out.m = be1.m + be2.m;
  return out;
}

// ---------------------------------------------------------------- fixed point

FpaaSchedule fpaa_schedule(double a, double delta, double eps) {
  if (!(a > 0 && a <= 1.0 + 1e-12)) throw std::invalid_argument("fpaa: amplitude must be in (0,1]");
  if (!(delta > 0 && delta <= a * (1.0 + 1e-12)))
    throw std::invalid_argument("fpaa: delta must lie in (0, 1/alpha]");
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("fpaa: eps must lie in (0,1)");
  FpaaSchedule s;
  s.amplitude = a;
  int L = static_cast<int>(std::ceil(std::log(2.0 / eps) / delta));
  if (L < 1) L = 1;
  if (L % 2 == 0) ++L;
  s.length = L;
  const int l = (L - 1) / 2;
  s.gamma = 1.0 / std::cosh(std::acosh(1.0 / eps) / L);
  const double root = std::sqrt(std::max(0.0, 1.0 - s.gamma * s.gamma));
  for (int j = 1; j <= l; ++j)
    s.alpha.push_back(2.0 * std::atan2(1.0, std::tan(2.0 * kPi * j / L) * root));
  for (int j = 1; j <= l; ++j) s.beta.push_back(-s.alpha[l - j]);
  s.final_amplitude = fpaa_amplitude(s, a);
  return s;
}

cplx fpaa_amplitude(const FpaaSchedule& s, double a) {
  // two-dimensional model: source |s> = a|g> + sqrt(1-a^2)|b>, target |g>
  const double sb = std::sqrt(std::max(0.0, 1.0 - a * a));
  Eigen::Vector2cd src(a, sb);
  Eigen::Vector2cd v = src;
  const cplx I(0.0, 1.0);
  for (size_t j = 0; j < s.alpha.size(); ++j) {
    v(0) *= std::exp(I * s.beta[j]);
    cplx ov = src.dot(v);  // <s|v>
    v -= (1.0 - std::exp(-I * s.alpha[j])) * ov * src;
    v = -v;
  }
  return v(0);
}

BlockEncoding fixed_point_aa(const BlockEncoding& be, double delta, double eps) {
  const FpaaSchedule s = fpaa_schedule(1.0 / be.alpha, delta, eps);
  const int m = be.circuit_ancillas();
  auto c = std::make_shared<Circuit>("FPAA", with_optional({{"flag", 1}, {"anc", m}, {"sys", be.n}}));
  const auto args = pack_args(*be.unitary, "anc", 0);
  std::vector<Control> on_zero;
  if (m > 0) on_zero.push_back(Control{Slice("anc"), 0});
  auto reflect = [&](double phi) {
    DenseMatrix p = DenseMatrix::Identity(2, 2);
    p(1, 1) = std::polar(1.0, phi);
    c->x("flag", on_zero);
    c->unitary("P", p, {"flag"});
    c->x("flag", on_zero);
  };
  c->call(be.unitary, args);
  for (size_t j = 0; j < s.alpha.size(); ++j) {
    reflect(s.beta[j]);
    c->call(be.unitary, args, true);
    reflect(-s.alpha[j]);
    c->call(be.unitary, args);
    c->global_phase(-1.0);
  }
  c->global_phase(std::polar(1.0, -std::arg(s.final_amplitude)));
  BlockEncoding out = make_block_encoding(c, 1.0, eps + (2.0 + s.length) * be.eps);
  out.m = be.m + 1;
  out.dilated = be.dilated;
  return out;
}

BlockEncoding fixed_point_aa(const BlockEncoding& be, double eps) {
  return fixed_point_aa(be, 0.9 / be.alpha, eps);
}

// ---------------------------------------------------------------- dilation

namespace {
DenseMatrix psd_sqrt(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m);
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}
}  // namespace

BlockEncoding dilation(const DenseMatrix& b, double alpha, double eps, int logical_m) {
  const Eigen::Index d = b.rows();
  if (b.cols() != d || !is_pow2(d)) throw std::invalid_argument("dilation: square 2^n block expected");
  Eigen::JacobiSVD<DenseMatrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd sv = svd.singularValues();
  if (sv.size() && sv(0) > 1.0 + 1e-9)
    throw std::invalid_argument("dilation: block norm exceeds 1");
  DenseMatrix bc = svd.matrixU() * sv.cwiseMin(1.0).asDiagonal() * svd.matrixV().adjoint();
  const DenseMatrix id = DenseMatrix::Identity(d, d);
  DenseMatrix u(2 * d, 2 * d);
  u.topLeftCorner(d, d) = bc;
  u.topRightCorner(d, d) = psd_sqrt(id - bc * bc.adjoint());
  u.bottomLeftCorner(d, d) = psd_sqrt(id - bc.adjoint() * bc);
  u.bottomRightCorner(d, d) = -bc.adjoint();
  const int n = ceil_log2(d);
  auto c = std::make_shared<Circuit>("dilation", RegisterList{{"dil", 1}, {"sys", n}});
  c->unitary("W", u, {"dil", "sys"});
  BlockEncoding out = make_block_encoding(c, alpha, eps);
  out.m = logical_m;
  out.dilated = true;
  return out;
}

}  // namespace hubsim
