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

#include "hubsim/dyson.hpp"

#include <cmath>
#include <sstream>

#include "hubsim/ffhub.hpp"
#include "hubsim/sparse_enc.hpp"

namespace hubsim {

double alpha1(const HubSparseGraph& g) {
  return std::sqrt(double(g.m_hubs()) * double(g.n_nodes() - g.m_hubs()));
}

double alpha2(const HubSparseGraph& g) {
  const double s = double(next_pow2(std::max(1, g.s_param())));
  if (g.m_hubs() == 0) return s;
  return double(next_pow2(std::max(1, g.h_param()))) + double(g.m_hubs()) + s;
}

double truncation_bound(double a, int k) {
  // (e a)^{k+1} / (k+1)!
  return std::exp((k + 1) * (1.0 + std::log(a)) - std::lgamma(k + 2.0));
}

int truncation_order(double a, double eps_seg) {
  if (!(a > 0.0)) return 0;
  if (!(eps_seg > 0.0)) throw ConfigError("truncation_order: eps must be positive");
  int k = 0;
  while (truncation_bound(a, k) > eps_seg / 2.0) {
    if (++k > 200) throw ConfigError("truncation_order: no K below 200");
  }
  return k;
}

std::int64_t grid_size(double a1, double a2, double tau, double eps_seg) {
  if (!(eps_seg > 0.0)) throw ConfigError("grid_size: eps must be positive");
  const double raw = std::ceil(2.0 * (a1 + a2) * tau / eps_seg);
  if (raw > double(std::int64_t(1) << 40)) throw ResourceError("grid", "D exceeds 2^40");
  return next_pow2(std::max<std::int64_t>(2, std::int64_t(raw)));
}

DysonConfig plan_segment(const HubSparseGraph& g, double tau, double eps_total, double t_total) {
  DysonConfig c;
  c.tau = tau;
  c.eps_total = eps_total;
  c.t_total = t_total;
  const double es = c.eps_segment();
  c.big_k = truncation_order(alpha2(g) * tau, es);
  c.big_d = grid_size(alpha1(g), alpha2(g), tau, es);
  return c;
}

// ---------------------------------------------------------------- select-G

namespace {
int log_d(std::int64_t big_d) {
  if (big_d < 1 || !is_pow2(big_d)) throw ConfigError("D must be a power of two");
  return ceil_log2(big_d);
}
}  // namespace

std::vector<BlockEncoding> selectG_leaves(const OracleSet& os, double tau, std::int64_t big_d,
                                          double eps) {
  const int ld = log_d(big_d);
  std::vector<BlockEncoding> out;
  const double leaf_eps = ld > 0 ? eps / (2.0 * ld) : eps;
  for (int b = 0; b < ld; ++b)
    out.push_back(build_expG(os, tau * double(std::int64_t(1) << b) / double(big_d), leaf_eps));
  return out;
}

BlockEncoding build_selectG(const OracleSet& os, double tau, std::int64_t big_d, double eps) {
  const int ld = log_d(big_d);
  const int n = os.n_qubits();
  auto leaves = selectG_leaves(os, tau, big_d, eps);
  int bank = 8;
  for (const auto& l : leaves) bank = std::max(bank, l.circuit_ancillas());
  auto c = std::make_shared<Circuit>("CG", RegisterList{{"bank", bank}, {"sys", ld + n}});
  for (int b = 0; b < ld; ++b) {
    const auto& u = *leaves[b].unitary;
    c->call(leaves[b].unitary, ancilla_args(u, "bank", 0, Slice("sys", 0, n)), false,
            {Control{Slice("sys", n + b, 1), 1}});
  }
  BlockEncoding out = make_block_encoding(c, 1.0, eps / 2.0);
  out.m = 8;
  return out;
}

// ---------------------------------------------------------------- families

void DressedFamily::accumulate(std::int64_t d, const DenseMatrix& in,
                               std::vector<DenseMatrix>& s) const {
  for (size_t k = 1; k < s.size(); ++k) s[k] += apply(d, k == 1 ? in : s[k - 1]);
}

BlockDressedFamily::BlockDressedFamily(std::vector<DenseMatrix> g_blocks, DenseMatrix h2_block,
                                       double a1, double a2, double tau, std::int64_t big_d)
    : g_(std::move(g_blocks)), h2_(std::move(h2_block)), alpha1_(a1), alpha2_(a2), tau_(tau),
      d_(big_d) {
  if (int(g_.size()) != log_d(big_d))
    throw std::invalid_argument("BlockDressedFamily: need log D leaf blocks");
  for (const auto& m : g_)
    if (m.rows() != h2_.rows() || m.cols() != h2_.cols())
      throw std::invalid_argument("BlockDressedFamily: block size mismatch");
}

DenseMatrix BlockDressedFamily::rotate(std::int64_t d, const DenseMatrix& in) const {
  DenseMatrix x = in;
  for (size_t b = 0; b < g_.size(); ++b)
    if ((d >> b) & 1) x = g_[b] * x;
  return x;
}

DenseMatrix BlockDressedFamily::matrix(std::int64_t d) const {
  const Eigen::Index n = h2_.rows();
  DenseMatrix cg = rotate(d, DenseMatrix::Identity(n, n));
  return cg.adjoint() * h2_ * cg;
}

DenseMatrix BlockDressedFamily::apply(std::int64_t d, const DenseMatrix& in) const {
  DenseMatrix y = h2_ * rotate(d, in);
  for (size_t b = g_.size(); b-- > 0;)
    if ((d >> b) & 1) y = g_[b].adjoint() * y;
  return y;
}

void BlockDressedFamily::accumulate(std::int64_t d, const DenseMatrix& in,
                                    std::vector<DenseMatrix>& s) const {
  if (in.cols() == 1) return DressedFamily::accumulate(d, in, s);
  const DenseMatrix hd = matrix(d);
  for (size_t k = 1; k < s.size(); ++k) s[k].noalias() += hd * (k == 1 ? in : s[k - 1]);
}

ExactDressedFamily::ExactDressedFamily(const HubSparseGraph& g, double tau, std::int64_t big_d)
    : n_(g.n_nodes()), alpha1_(hubsim::alpha1(g)), alpha2_(hubsim::alpha2(g)), tau_(tau),
      d_(big_d) {
  log_d(big_d);
  h2_ = dense_H2(g).sparseView();
  hub_.assign(n_, 0);
  for (int v : g.hubs()) hub_[v] = 1;
  const int m = g.m_hubs();
  lam_ = (m == 0 || m == n_) ? 0.0 : alpha1_;
  ch_ = m > 0 ? 1.0 / std::sqrt(2.0 * m) : 0.0;
  cr_ = m < n_ ? 1.0 / std::sqrt(2.0 * (n_ - m)) : 0.0;
}

DenseMatrix ExactDressedFamily::rotate(double s, const DenseMatrix& in) const {
  if (lam_ == 0.0 || s == 0.0) return in;
  Eigen::RowVectorXcd hs = Eigen::RowVectorXcd::Zero(in.cols());
  Eigen::RowVectorXcd rs = Eigen::RowVectorXcd::Zero(in.cols());
  for (int i = 0; i < n_; ++i) (hub_[i] ? hs : rs) += in.row(i);
  const Eigen::RowVectorXcd pp = ch_ * hs + cr_ * rs;
  const Eigen::RowVectorXcd pm = ch_ * hs - cr_ * rs;
  const cplx fp = std::exp(cplx(0, -lam_ * s)) - 1.0;
  const cplx fm = std::exp(cplx(0, lam_ * s)) - 1.0;
  const Eigen::RowVectorXcd hub_add = ch_ * (fp * pp + fm * pm);
  const Eigen::RowVectorXcd reg_add = cr_ * (fp * pp - fm * pm);
  DenseMatrix out = in;
  for (int i = 0; i < n_; ++i) out.row(i) += hub_[i] ? hub_add : reg_add;
  return out;
}

DenseMatrix ExactDressedFamily::apply(std::int64_t d, const DenseMatrix& in) const {
  const double s = double(d) * tau_ / double(d_);
  DenseMatrix y = h2_ * rotate(s, in);
  y /= alpha2_;
  return rotate(-s, y);
}

BlockEncoding build_dressed_H2(const OracleSet& os, double tau, std::int64_t big_d, double eps) {
  const int ld = log_d(big_d);
  const int n = os.n_qubits();
  if (ld + n > 12) throw ResourceError("dressed_H2", "log D + n exceeds 12 dense qubits");
  BlockEncoding h2 = encode_H2(os);
  std::vector<DenseMatrix> blocks;
  for (const auto& l : selectG_leaves(os, tau, big_d, eps)) blocks.push_back(l.block());
  BlockDressedFamily fam(std::move(blocks), h2.block(), alpha1(os.graph()), h2.alpha, tau, big_d);
  const Eigen::Index nn = Eigen::Index(1) << n;
  DenseMatrix bd = DenseMatrix::Zero(nn * big_d, nn * big_d);
  for (std::int64_t d = 0; d < big_d; ++d) bd.block(d * nn, d * nn, nn, nn) = fam.matrix(d);
  return dilation(bd, h2.alpha, h2.alpha * eps + h2.eps, 8 + h2.m + 8);
}

// ---------------------------------------------------------------- Dyson series

std::vector<DenseMatrix> dyson_terms(const DressedFamily& fam, int big_k, const DenseMatrix& in) {
  if (big_k < 0) throw ConfigError("dyson_terms: K must be non-negative");
  if (in.rows() != fam.dim()) throw std::invalid_argument("dyson_terms: size mismatch");
  // s[k] after step d: sum over d_1 <= ... <= d_k <= d of H(d_k)...H(d_1) in
  std::vector<DenseMatrix> s(big_k + 1, DenseMatrix::Zero(in.rows(), in.cols()));
  s[0] = in;
  if (big_k > 0)
    for (std::int64_t d = 0; d < fam.big_d(); ++d) fam.accumulate(d, in, s);
  const cplx step(0.0, -fam.tau() * fam.alpha2() / double(fam.big_d()));
  cplx f = 1.0;
  for (int k = 1; k <= big_k; ++k) {
    f *= step;
    s[k] *= f;
  }
  return s;
}

int dyson_logical_ancillas(int big_k, std::int64_t big_d, int m_h2) {
  if (big_k == 0) return 0;
  return big_k * log_d(big_d) + big_k * (8 + m_h2 + 8) + (big_k - 1) + ceil_log2(big_k + 1);
}

namespace {
void check_config(const DressedFamily& fam, const DysonConfig& cfg) {
  if (!(cfg.tau > 0.0)) throw ConfigError("dyson_segment: tau must be positive");
  if (cfg.big_k < 0) throw ConfigError("dyson_segment: K must be non-negative");
  log_d(cfg.big_d);
  if (cfg.big_d != fam.big_d() || std::abs(cfg.tau - fam.tau()) > 1e-15 * cfg.tau)
    throw std::invalid_argument("dyson_segment: family built for another (tau, D)");
  if (!cfg.enforce_bounds) return;
  const double es = cfg.eps_segment();
  const double a2 = fam.alpha2();
  std::ostringstream os;
  os.precision(6);
  if (cfg.tau > (1.0 + 1e-12) / (2.0 * a2)) {
    os << "dyson_segment: tau = " << cfg.tau << " exceeds 1/(2 alpha2) = " << 1.0 / (2.0 * a2);
    throw ConfigError(os.str());
  }
  const double tb = truncation_bound(a2 * cfg.tau, cfg.big_k);
  if (tb > es / 2.0) {
    os << "dyson_segment: K = " << cfg.big_k << " gives truncation bound " << tb
       << " > eps_seg/2 = " << es / 2.0;
    throw ConfigError(os.str());
  }
  const double need = 2.0 * (fam.alpha1() + a2) * cfg.tau / es;
  if (cfg.big_k > 0 && double(cfg.big_d) < need) {
    os << "dyson_segment: D = " << cfg.big_d << " below 2 (alpha1 + alpha2) tau / eps_seg = "
       << need;
    throw ConfigError(os.str());
  }
}
}  // namespace

DysonSegment dyson_segment(const DressedFamily& fam, const DysonConfig& cfg, int m_h2) {
  check_config(fam, cfg);
  const int dim = fam.dim();
  auto terms = dyson_terms(fam, cfg.big_k, DenseMatrix::Identity(dim, dim));
  DysonSegment out;
  out.series = DenseMatrix::Zero(dim, dim);
  out.alpha = 0.0;
  const double a = cfg.tau * fam.alpha2();
  for (int k = 0; k <= cfg.big_k; ++k) {
    out.series += terms[k];
    out.alpha += std::pow(a, k);
  }
  out.encoding = dilation(out.series / out.alpha, out.alpha, cfg.eps_segment(),
                          dyson_logical_ancillas(cfg.big_k, cfg.big_d, m_h2));
  return out;
}

int h2_ancillas(const HubSparseGraph& g) { return g.n_qubits() + (g.m_hubs() == 0 ? 4 : 6); }

DysonSegment dyson_segment(const HubSparseGraph& g, const DysonConfig& cfg) {
  ExactDressedFamily fam(g, cfg.tau, cfg.big_d);
  return dyson_segment(fam, cfg, h2_ancillas(g));
}

}  // namespace hubsim
