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

#ifndef HUBSIM_ORACLES_HPP_
#define HUBSIM_ORACLES_HPP_

#include <memory>
#include <vector>

#include "hubsim/netgraph.hpp"
#include "hubsim/qstate.hpp"

namespace hubsim {

/// Input oracles of a hub-sparse graph plus the two derived ones.
///
/// Register conventions (row register first):
///   O_A  (i:n, j:n, z:1)  z ^= A_ij
///   O_L  (i:n, l:n)       l -> r(l, i)
///   O_H  (l:n)            l -> h(l)
///   O_K  (i:n, z:1)       z ^= [i is a hub]
///   O_Z  (i:n, l:n)       l -> q(l, i)
///
/// r(l, i) lists the neighbours of i ascending, then the zero positions of
/// row i ascending (the diagonal included), so every row is a permutation.
/// h(l) lists the hubs ascending, then the regular nodes ascending.
/// q(l, i) on a hub row lists the zeros ascending then the neighbours. On a
/// regular row it lists the hubs missing from the row first, then the other
/// zeros, then the neighbours.
struct OracleTables {
  explicit OracleTables(const HubSparseGraph& g);
  HubSparseGraph graph;
  int n;  // qubits per node index
  std::vector<std::vector<int>> r, r_inv, q, q_inv;  // indexed [row][*]
  std::vector<int> h, h_inv;
};

class OracleSet {
 public:
  explicit OracleSet(const HubSparseGraph& g);

  const HubSparseGraph& graph() const { return t_->graph; }
  int n_qubits() const { return t_->n; }

  int a(int i, int j) const { return t_->graph.has_edge(i, j) ? 1 : 0; }
  int r(int l, int i) const { return t_->r[i][l]; }
  int r_inv(int j, int i) const { return t_->r_inv[i][j]; }
  int h(int l) const { return t_->h[l]; }
  int h_inv(int j) const { return t_->h_inv[j]; }
  int k(int i) const { return t_->graph.is_hub(i) ? 1 : 0; }
  int q(int l, int i) const { return t_->q[i][l]; }
  int q_inv(int j, int i) const { return t_->q_inv[i][j]; }

  CircuitPtr o_a, o_l, o_h, o_k, o_z;

 private:
  std::shared_ptr<const OracleTables> t_;
};

OracleSet build_oracle_set(const HubSparseGraph& g);

/// Hub bit recovered from O_L and O_A alone: a fixed-depth binary search
/// for the degree, compared with N - h. Needs N - h > s.
class QueryOK {
 public:
  explicit QueryOK(const OracleSet& os);

  int degree(int i, QueryCounter& ctr) const;
  int evaluate(int i, QueryCounter& ctr) const;
  std::int64_t ol_calls_per_invocation() const { return 2 * n_; }

  /// (i:n, z:1) operator; each application is charged the per-invocation tally.
  CircuitPtr op;

 private:
  OracleSet os_;
  int n_;
};

/// Hub-row O_Z recovered from O_L and O_A: degree search, then a binary
/// search over the gaps of the sorted neighbour list. Non-hub rows raise
/// ContractError in evaluate(); the operator leaves them untouched.
class QueryOZ {
 public:
  explicit QueryOZ(const OracleSet& os);

  int evaluate(int i, int l, QueryCounter& ctr) const;
  std::int64_t ol_calls_worst_case() const { return 4 * n_; }

  CircuitPtr op;

 private:
  QueryOK ok_;
  OracleSet os_;
  int n_;
};

QueryOK derive_OK_by_query(const OracleSet& os);
QueryOZ derive_OZ_by_query(const OracleSet& os);

}  // namespace hubsim

#endif  // HUBSIM_ORACLES_HPP_
