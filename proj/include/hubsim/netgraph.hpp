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

#ifndef HUBSIM_NETGRAPH_HPP_
#define HUBSIM_NETGRAPH_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hubsim/common.hpp"

namespace hubsim {

typedef std::pair<int, int> Edge;
typedef Eigen::MatrixXi IntMatrix;

/// Simple undirected graph with a declared hub set and (M, h, s).
/// Immutable once built.
class HubSparseGraph {
 public:
  HubSparseGraph(int n_nodes, const std::vector<Edge>& edges, std::vector<int> hubs, int h_param,
                 int s_param);

  int n_nodes() const { return n_; }
  int n_qubits() const { return ceil_log2(n_); }
  int m_hubs() const { return static_cast<int>(hubs_.size()); }
  int h_param() const { return h_; }
  int s_param() const { return s_; }
  const std::vector<int>& hubs() const { return hubs_; }
  const std::vector<int>& neighbors(int i) const { return adj_.at(i); }
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }
  int degree(int i) const { return static_cast<int>(adj_.at(i).size()); }
  bool is_hub(int i) const { return hub_flag_.at(i) != 0; }
  bool has_edge(int i, int j) const;
  std::vector<int> regular_nodes() const;

  /// Each edge once, u < v, lexicographic.
  std::vector<Edge> edges() const;

  IntMatrix dense_adjacency() const;
  /// G_ij = 1 iff exactly one of i, j is a hub.
  IntMatrix dense_G() const;

 private:
  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> hubs_;
  std::vector<char> hub_flag_;
  int h_;
  int s_;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;
  std::vector<int> bad_nodes;  // ascending, unique
};

ValidationReport validate(const HubSparseGraph& g);

/// Random graph satisfying the hub-sparse conditions; deterministic in the seed.
/// Besides the degree bounds, every regular node misses at most h hubs.
HubSparseGraph generate(int n_nodes, int m_hubs, int s_param, int h_param, std::uint64_t seed);

/// Checks the parameter tuple; throws ConfigError naming the failed condition.
void check_generator_params(int n_nodes, int m_hubs, int s_param, int h_param);

struct GraphSplit {
  int n_nodes = 0;
  std::vector<int> hubs;
  std::vector<Edge> a_minus;  // (hub, regular) pairs absent from A
  std::vector<Edge> a_h;      // hub-hub edges, u < v
  std::vector<Edge> a_r;      // regular-regular edges, u < v
};

GraphSplit split(const HubSparseGraph& g);

/// Symmetric 0/1 matrix with ones on the listed pairs.
IntMatrix dense_from_edges(int n, const std::vector<Edge>& edges);
IntMatrix dense_G(int n, const std::vector<int>& hubs);
/// G - A_minus + A_h + A_r
IntMatrix reconstruct(const GraphSplit& sp);

/// Fixture: N=8, hubs {6,7}, M=2, h=2, s=4.
HubSparseGraph dg8();

// JSON: {"nodes": N, "hubs": [...], "edges": [[u,v],...], "params": {"M","h","s"}}
std::string graph_to_json(const HubSparseGraph& g);
HubSparseGraph graph_from_json(const std::string& text);
HubSparseGraph load_graph(const std::string& path);
void save_graph(const HubSparseGraph& g, const std::string& path);

}  // namespace hubsim

#endif  // HUBSIM_NETGRAPH_HPP_
