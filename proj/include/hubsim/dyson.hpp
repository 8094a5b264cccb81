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

#ifndef HUBSIM_DYSON_HPP_
#define HUBSIM_DYSON_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "hubsim/blockenc.hpp"
#include "hubsim/netgraph.hpp"
#include "hubsim/oracles.hpp"

namespace hubsim {

/// Segment parameters. eps_segment() = eps_total * tau / t_total.
struct DysonConfig {
  double tau = 0.0;
  std::int64_t big_d = 1;
  int big_k = 1;
  double eps_total = 1e-3;
  double t_total = 1.0;
  bool enforce_bounds = true;  // raise ConfigError when K or D miss eps_segment()

  double eps_segment() const { return eps_total * tau / t_total; }
};

/// ||G|| = sqrt(M (N - M)).
double alpha1(const HubSparseGraph& g);
/// alpha of encode_H2: h + M + s, or s without hubs (powers of two rounded up).
double alpha2(const HubSparseGraph& g);

/// Smallest K with (e a)^{K+1} / (K+1)! <= eps_seg / 2, a = alpha2 * tau.
int truncation_order(double alpha2_tau, double eps_seg);
double truncation_bound(double alpha2_tau, int k);
/// ceil(2 (alpha1 + alpha2) tau / eps_seg) rounded up to a power of two (>= 2).
std::int64_t grid_size(double a1, double a2, double tau, double eps_seg);

DysonConfig plan_segment(const HubSparseGraph& g, double tau, double eps_total, double t_total);

/// Leaves of the select-G cascade: G_{tau 2^b / D}, b = 0 .. log D - 1, each
/// amplified to eps / (2 log D).
std::vector<BlockEncoding> selectG_leaves(const OracleSet& os, double tau, std::int64_t big_d,
                                          double eps);

/// Controlled cascade sum_d |d><d| (x) e^{-iG d tau / D} as one circuit with a
/// shared 8-qubit bank. The system register is (d, node): d in the high bits.
BlockEncoding build_selectG(const OracleSet& os, double tau, std::int64_t big_d, double eps);

/// d -> block of the dressed Hamiltonian e^{iGs} H2 e^{-iGs} / alpha2, s = d tau / D.
class DressedFamily {
 public:
  virtual ~DressedFamily() = default;
  virtual int dim() const = 0;
  virtual std::int64_t big_d() const = 0;
  virtual double tau() const = 0;
  virtual double alpha1() const = 0;
  virtual double alpha2() const = 0;
  virtual DenseMatrix apply(std::int64_t d, const DenseMatrix& in) const = 0;
  /// s[k] += H(d) s[k-1] for k = 1.. (s[0] read as `in`), in increasing k.
  virtual void accumulate(std::int64_t d, const DenseMatrix& in,
                          std::vector<DenseMatrix>& s) const;
};

/// Built from extracted leaf blocks, composed with disjoint ancilla banks:
/// CG(d)^dagger * H2 * CG(d), CG(d) the product of the leaves selected by d.
class BlockDressedFamily : public DressedFamily {
 public:
  BlockDressedFamily(std::vector<DenseMatrix> g_blocks, DenseMatrix h2_block, double alpha1,
                     double alpha2, double tau, std::int64_t big_d);
  int dim() const override { return static_cast<int>(h2_.rows()); }
  std::int64_t big_d() const override { return d_; }
  double tau() const override { return tau_; }
  double alpha1() const override { return alpha1_; }
  double alpha2() const override { return alpha2_; }
  DenseMatrix apply(std::int64_t d, const DenseMatrix& in) const override;
  void accumulate(std::int64_t d, const DenseMatrix& in,
                  std::vector<DenseMatrix>& s) const override;
  /// CG(d) applied to `in`.
  DenseMatrix rotate(std::int64_t d, const DenseMatrix& in) const;
  DenseMatrix matrix(std::int64_t d) const;

 private:
  std::vector<DenseMatrix> g_;
  DenseMatrix h2_;
  double alpha1_, alpha2_;
  double tau_;
  std::int64_t d_;
};

/// Exact leaves: rank-2 e^{-iGs} and sparse A - G.
class ExactDressedFamily : public DressedFamily {
 public:
  ExactDressedFamily(const HubSparseGraph& g, double tau, std::int64_t big_d);
  int dim() const override { return n_; }
  std::int64_t big_d() const override { return d_; }
  double tau() const override { return tau_; }
  double alpha1() const override { return alpha1_; }
  double alpha2() const override { return alpha2_; }
  DenseMatrix apply(std::int64_t d, const DenseMatrix& in) const override;
  /// e^{-iGs} applied to `in`.
  DenseMatrix rotate(double s, const DenseMatrix& in) const;

 private:
  int n_;
  Eigen::SparseMatrix<cplx> h2_;
  std::vector<char> hub_;
  double alpha1_, alpha2_;
  double tau_;
  std::int64_t d_;
  double lam_ = 0.0, ch_ = 0.0, cr_ = 0.0;
};

/// Ancilla count of encode_H2 on this graph.
int h2_ancillas(const HubSparseGraph& g);

/// sum_d |d><d| (x) dressed block, as a dilation of the dense block-diagonal
/// matrix (small D only). System register: (d, node). alpha = alpha2.
BlockEncoding build_dressed_H2(const OracleSet& os, double tau, std::int64_t big_d, double eps);

/// Terms (-i tau)^k C_k applied to the columns of `in`, k = 0 .. K, where
/// C_k = D^{-k} sum over d_1 <= ... <= d_k of H(d_k) ... H(d_1).
std::vector<DenseMatrix> dyson_terms(const DressedFamily& fam, int big_k, const DenseMatrix& in);

/// Ancillas of the full construction: K time registers, K dressed stacks,
/// K - 1 ordering flags and the order index.
int dyson_logical_ancillas(int big_k, std::int64_t big_d, int m_h2);

struct DysonSegment {
  DenseMatrix series;      // truncated series (unnormalised)
  double alpha = 1.0;      // sum_k (tau alpha2)^k
  BlockEncoding encoding;  // dilation of series / alpha
};

DysonSegment dyson_segment(const DressedFamily& fam, const DysonConfig& cfg, int m_h2);
/// Exact-leaf family.
DysonSegment dyson_segment(const HubSparseGraph& g, const DysonConfig& cfg);

// ---------------------------------------------------------------- pipeline

enum class Method { kDense, kClassicalFF, kCircuit };

Method parse_method(const std::string& s);
std::string method_name(Method m);

struct StageReport {
  std::string name;
  double budget = 0.0;
  std::optional<double> achieved;
};

struct RunReport {
  std::string method;
  double t = 0.0;
  double eps = 0.0;
  double tau = 0.0;
  int segments = 0;
  int big_k = 0;
  std::int64_t big_d = 0;
  QueryTally queries;
  std::map<std::string, int> amplification_rounds;
  std::vector<StageReport> stages;
  std::optional<double> final_error_vs_reference;
  std::string reference_note;
};

struct SimulationResult {
  DenseVector state;
  RunReport report;
};

struct SimulateOptions {
  Method method = Method::kCircuit;
  bool check = false;          // compare with dense_expm(A, t) psi0 (N <= 4096)
  bool measure_stages = true;  // achieved error per stage (dense, small N)
};

/// Segments of length tau = 1/(2 alpha2): floor(t/tau) full ones and a
/// fractional remainder, each e^{-iG tau} * amplified Dyson block.
SimulationResult simulate_full(const HubSparseGraph& g, double t, double eps,
                               const DenseVector& psi0, const SimulateOptions& opt = {});

/// Logical query tally of simulate_full without running it.
RunReport plan_report(const HubSparseGraph& g, double t, double eps);

std::string report_to_json(const RunReport& r);

struct BenchRow {
  int n = 0, m = 0, s = 0, h = 0;
  double t = 0.0, eps = 0.0;
  std::string oracle;
  std::int64_t count = 0;
  double wall_ms = 0.0;
};

std::vector<BenchRow> bench_rows(const HubSparseGraph& g, const std::vector<double>& ts, double eps,
                                 bool timing);
std::string bench_csv(const std::vector<BenchRow>& rows, bool timing);

}  // namespace hubsim

#endif  // HUBSIM_DYSON_HPP_
