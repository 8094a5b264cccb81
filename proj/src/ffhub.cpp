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

#include "hubsim/ffhub.hpp"

#include <cmath>

namespace hubsim {

namespace {

void require_hubs(const HubSparseGraph& g, const char* what) {
  if (g.m_hubs() == 0) throw ConfigError(std::string(what) + ": M = 0, G vanishes");
  if (g.m_hubs() >= g.n_nodes()) throw ConfigError(std::string(what) + ": M = N, G vanishes");
}

// idx/anc of a 2-ancilla preparation routed onto a 2-qubit register
std::vector<Slice> prep_args(const std::string& reg) {
  return {Slice(reg, 1, 1), Slice(reg, 0, 1), Slice("sys")};
}

}  // namespace

GSpectrum spectrum_G(const HubSparseGraph& g) {
  require_hubs(g, "spectrum_G");
  const int n = g.n_nodes(), m = g.m_hubs();
  GSpectrum s;
  s.lambda_plus = std::sqrt(double(m) * double(n - m));
  s.lambda_minus = -s.lambda_plus;
  Eigen::VectorXd hub = Eigen::VectorXd::Zero(n), reg = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (g.is_hub(i)) hub(i) = 1.0 / std::sqrt(double(m));
    else reg(i) = 1.0 / std::sqrt(double(n - m));
  }
  s.psi_plus = (hub + reg) / std::sqrt(2.0);
  s.psi_minus = (hub - reg) / std::sqrt(2.0);
  return s;
}

double p_pm_alpha(int n_nodes, int m_hubs) {
  return (1.0 + std::sqrt(double(n_nodes) / double(n_nodes - m_hubs))) / std::sqrt(2.0);
}

double expG_beta(int n_nodes, int m_hubs) {
  double a = p_pm_alpha(n_nodes, m_hubs);
  return a * a;
}

BlockEncoding build_P_pm(const OracleSet& os, int sign) {
  const auto& g = os.graph();
  require_hubs(g, "build_P_pm");
  if (!is_pow2(g.m_hubs())) throw ConfigError("build_P_pm: M must be a power of two");
  const int n = os.n_qubits();
  const int logm = ceil_log2(g.m_hubs());
  // uniform over hubs: H on the low log M bits, then O_H
  auto hubs = std::make_shared<Circuit>("hub_uniform", RegisterList{{"sys", n}});
  if (logm > 0) hubs->h(Slice("sys", 0, logm));
  hubs->call(os.o_h, {"sys"});
  // uniform over regular nodes, flagged by O_K
  auto regs = std::make_shared<Circuit>("regular_uniform", RegisterList{{"k", 1}, {"sys", n}});
  regs->h("sys");
  regs->call(os.o_k, {"sys", "k"});
  const double a_reg = std::sqrt(double(g.n_nodes()) / double(g.n_nodes() - g.m_hubs()));
  const double c = 1.0 / std::sqrt(2.0);
  BlockEncoding out = lcu({c, sign >= 0 ? c : -c},
                          {make_block_encoding(hubs, 1.0), make_block_encoding(regs, a_reg)});
  return out;
}

BlockEncoding build_expG_branch(const OracleSet& os, double t, bool with_phase) {
  const auto& g = os.graph();
  require_hubs(g, "build_expG");
  const int n = os.n_qubits();
  const BlockEncoding up = build_P_pm(os, +1), um = build_P_pm(os, -1);
  const double lam = std::sqrt(double(g.m_hubs()) * double(g.n_nodes() - g.m_hubs()));
  auto c = std::make_shared<Circuit>(with_phase ? "U1" : "U2",
                                     RegisterList{{"a", 1}, {"minus", 2}, {"plus", 2}, {"sys", n}});
  c->call(up.unitary, prep_args("plus"), true);
  c->x("a", {Control{Slice("plus"), 0}, Control{Slice("sys"), 0}});
  if (with_phase) c->rz(-2.0 * lam * t, "a");
  c->call(up.unitary, prep_args("plus"));
  c->call(um.unitary, prep_args("minus"), true);
  c->x("a", {Control{Slice("minus"), 0}, Control{Slice("sys"), 0}});
  c->call(um.unitary, prep_args("minus"));
  c->x("a");
  return make_block_encoding(c, expG_beta(g.n_nodes(), g.m_hubs()));
}

BlockEncoding build_expG_pre(const OracleSet& os, double t) {
  const int n = os.n_qubits();
  BlockEncoding u1 = build_expG_branch(os, t, true);
  BlockEncoding u2 = build_expG_branch(os, t, false);
  BlockEncoding ui = identity_encoding(n, 5);
  return lcu({1.0, -1.0, 1.0}, {u1, u2, ui});
}

BlockEncoding build_expG(const OracleSet& os, double t, double eps) {
  const auto& g = os.graph();
  if (g.m_hubs() == 0) {
    BlockEncoding id = identity_encoding(os.n_qubits(), 8);
    id.eps = 0.0;
    return id;
  }
  BlockEncoding pre = build_expG_pre(os, t);
  return fixed_point_aa(pre, 0.9 / pre.alpha, eps);
}

BlockEncoding build_expG(const HubSparseGraph& g, double t, double eps) {
  return build_expG(OracleSet(g), t, eps);
}

DenseMatrix classical_expG_apply(const HubSparseGraph& g, double t, const DenseMatrix& cols) {
  if (cols.rows() != g.n_nodes()) throw std::invalid_argument("classical_expG_apply: size mismatch");
  const int n = g.n_nodes(), m = g.m_hubs();
  if (m == 0 || m == n) return cols;
  const double lam = std::sqrt(double(m) * double(n - m));
  const double ch = 1.0 / std::sqrt(2.0 * m), cr = 1.0 / std::sqrt(2.0 * (n - m));
  // <Psi+-|col> from hub and regular sums
  Eigen::RowVectorXcd hs = Eigen::RowVectorXcd::Zero(cols.cols());
  Eigen::RowVectorXcd rs = Eigen::RowVectorXcd::Zero(cols.cols());
  for (int i = 0; i < n; ++i) {
    if (g.is_hub(i)) hs += cols.row(i);
    else rs += cols.row(i);
  }
  const Eigen::RowVectorXcd pp = ch * hs + cr * rs;
  const Eigen::RowVectorXcd pm = ch * hs - cr * rs;
  const cplx fp = std::exp(cplx(0, -lam * t)) - 1.0;
  const cplx fm = std::exp(cplx(0, lam * t)) - 1.0;
  DenseMatrix out = cols;
  const Eigen::RowVectorXcd hub_add = ch * (fp * pp + fm * pm);
  const Eigen::RowVectorXcd reg_add = cr * (fp * pp - fm * pm);
  for (int i = 0; i < n; ++i) out.row(i) += g.is_hub(i) ? hub_add : reg_add;
  return out;
}

DenseVector classical_expG_apply(const HubSparseGraph& g, double t, const DenseVector& psi) {
  return classical_expG_apply(g, t, DenseMatrix(psi)).col(0);
}

DenseMatrix classical_expG_matrix(const HubSparseGraph& g, double t) {
  const int n = g.n_nodes();
  return classical_expG_apply(g, t, DenseMatrix(DenseMatrix::Identity(n, n)));
}

}  // namespace hubsim
