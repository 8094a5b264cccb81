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

#include "hubsim/oracles.hpp"

#include <algorithm>

namespace hubsim {

namespace {
typedef std::shared_ptr<const OracleTables> TablesPtr;

std::vector<int> invert(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (size_t x = 0; x < p.size(); ++x) inv[p[x]] = static_cast<int>(x);
  return inv;
}
}  // namespace

OracleTables::OracleTables(const HubSparseGraph& g) : graph(g) {
  const int nn = g.n_nodes();
  if (!is_pow2(nn)) throw std::invalid_argument("oracles need N to be a power of two");
  n = ceil_log2(nn);
  r.resize(nn);
  q.resize(nn);
  for (int i = 0; i < nn; ++i) {
    std::vector<int> zeros, missing_hubs, other_zeros;
    for (int j = 0; j < nn; ++j) {
      if (g.has_edge(i, j)) continue;
      zeros.push_back(j);
      if (!g.is_hub(i) && g.is_hub(j)) missing_hubs.push_back(j);
      else other_zeros.push_back(j);
    }
    const auto& nb = g.neighbors(i);
    r[i] = nb;
    r[i].insert(r[i].end(), zeros.begin(), zeros.end());
    if (g.is_hub(i)) {
      q[i] = zeros;
    } else {
      q[i] = missing_hubs;
      q[i].insert(q[i].end(), other_zeros.begin(), other_zeros.end());
    }
    q[i].insert(q[i].end(), nb.begin(), nb.end());
  }
  for (int i = 0; i < nn; ++i) {
    r_inv.push_back(invert(r[i]));
    q_inv.push_back(invert(q[i]));
  }
  h = g.hubs();
  for (int v : g.regular_nodes()) h.push_back(v);
  h_inv = invert(h);
}

OracleSet::OracleSet(const HubSparseGraph& g) : t_(std::make_shared<OracleTables>(g)) {
  const int n = t_->n;
  TablesPtr t = t_;
  {
    auto c = std::make_shared<Circuit>("O_A", RegisterList{{"i", n}, {"j", n}, {"z", 1}});
    auto f = [t](std::uint64_t* v) { v[2] ^= t->graph.has_edge(int(v[0]), int(v[1])) ? 1 : 0; };
    c->permutation("O_A", {"i", "j", "z"}, f, f, {}, {{"O_A", 1}});
    o_a = c;
  }
  {
    auto c = std::make_shared<Circuit>("O_L", RegisterList{{"i", n}, {"l", n}});
    c->permutation(
        "O_L", {"i", "l"}, [t](std::uint64_t* v) { v[1] = t->r[v[0]][v[1]]; },
        [t](std::uint64_t* v) { v[1] = t->r_inv[v[0]][v[1]]; }, {}, {{"O_L", 1}});
    o_l = c;
  }
  {
    auto c = std::make_shared<Circuit>("O_H", RegisterList{{"l", n}});
    c->permutation(
        "O_H", {"l"}, [t](std::uint64_t* v) { v[0] = t->h[v[0]]; },
        [t](std::uint64_t* v) { v[0] = t->h_inv[v[0]]; }, {}, {{"O_H", 1}});
    o_h = c;
  }
  {
    auto c = std::make_shared<Circuit>("O_K", RegisterList{{"i", n}, {"z", 1}});
    auto f = [t](std::uint64_t* v) { v[1] ^= t->graph.is_hub(int(v[0])) ? 1 : 0; };
    c->permutation("O_K", {"i", "z"}, f, f, {}, {{"O_K", 1}});
    o_k = c;
  }
  {
    auto c = std::make_shared<Circuit>("O_Z", RegisterList{{"i", n}, {"l", n}});
    c->permutation(
        "O_Z", {"i", "l"}, [t](std::uint64_t* v) { v[1] = t->q[v[0]][v[1]]; },
        [t](std::uint64_t* v) { v[1] = t->q_inv[v[0]][v[1]]; }, {}, {{"O_Z", 1}});
    o_z = c;
  }
}

OracleSet build_oracle_set(const HubSparseGraph& g) { return OracleSet(g); }

// ---------------------------------------------------------------- query model

namespace {

// Graph access restricted to O_L and O_A; every call is tallied.
class Port {
 public:
  Port(const OracleSet& os, QueryCounter& ctr) : os_(os), ctr_(ctr) {}
  // compute r(l, i) into a work register, read it, uncompute
  int neighbor(int i, int l) {
    ctr_.add("O_L", 2);
    return os_.r(l, i);
  }
  int flag(int i, int l) {
    ctr_.add("O_L", 2);
    ctr_.add("O_A", 1);
    return os_.a(i, os_.r(l, i));
  }

 private:
  const OracleSet& os_;
  QueryCounter& ctr_;
};

int degree_search(const OracleSet& os, int i, QueryCounter& ctr) {
  Port port(os, ctr);
  const int n = os.n_qubits();
  const int nn = os.graph().n_nodes();
  int k = 0;
  for (int b = n - 1; b >= 0; --b) {
    int cand = k + (1 << b);  // never exceeds N-1
    if (cand <= nn - 1 && port.flag(i, cand - 1)) k = cand;
  }
  return k;
}

// l-th entry of q(., i) on a hub row of degree k
int zero_lookup(const OracleSet& os, int i, int l, int k, QueryCounter& ctr) {
  Port port(os, ctr);
  const int z = os.graph().n_nodes() - k;  // zeros in the row, diagonal included
  if (l >= z) return port.neighbor(i, l - z);
  // smallest m in [0, k] with m == k or r(m) - m > l; then q = l + m
  int lo = 0, hi = k;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (port.neighbor(i, mid) - mid > l) hi = mid;
    else lo = mid + 1;
  }
  return l + lo;
}

void require_separable(const OracleSet& os) {
  const auto& g = os.graph();
  if (g.n_nodes() - g.h_param() <= g.s_param())
    throw ContractError("query-model O_K needs N-h > s to tell hubs from regular nodes");
}

}  // namespace

QueryOK::QueryOK(const OracleSet& os) : os_(os), n_(os.n_qubits()) {
  require_separable(os);
  const int n = n_;
  OracleSet copy = os;
  auto c = std::make_shared<Circuit>("O_K[query]", RegisterList{{"i", n}, {"z", 1}});
  auto f = [copy](std::uint64_t* v) {
    QueryCounter scratch;
    const auto& g = copy.graph();
    int k = degree_search(copy, int(v[0]), scratch);
    v[1] ^= (k >= g.n_nodes() - g.h_param()) ? 1 : 0;
  };
  c->permutation("O_K[query]", {"i", "z"}, f, f, {}, {{"O_L", 2 * n}, {"O_A", n}});
  op = c;
}

int QueryOK::degree(int i, QueryCounter& ctr) const { return degree_search(os_, i, ctr); }

int QueryOK::evaluate(int i, QueryCounter& ctr) const {
  const auto& g = os_.graph();
  return degree(i, ctr) >= g.n_nodes() - g.h_param() ? 1 : 0;
}

QueryOZ::QueryOZ(const OracleSet& os) : ok_(os), os_(os), n_(os.n_qubits()) {
  const int n = n_;
  OracleSet copy = os;
  QueryOK ok = ok_;
  auto c = std::make_shared<Circuit>("O_Z[query]", RegisterList{{"i", n}, {"l", n}});
  auto fwd = [copy, ok](std::uint64_t* v) {
    QueryCounter scratch;
    const int i = int(v[0]);
    const int k = ok.degree(i, scratch);
    if (k < copy.graph().n_nodes() - copy.graph().h_param()) return;
    v[1] = zero_lookup(copy, i, int(v[1]), k, scratch);
  };
  auto inv = [copy, ok](std::uint64_t* v) {
    QueryCounter scratch;
    int i = int(v[0]);
    if (!ok.evaluate(i, scratch)) return;
    v[1] = copy.q_inv(int(v[1]), i);
  };
  c->permutation("O_Z[query]", {"i", "l"}, fwd, inv, {}, {{"O_L", 4 * n}, {"O_A", n}});
  op = c;
}

int QueryOZ::evaluate(int i, int l, QueryCounter& ctr) const {
  const int nn = os_.graph().n_nodes();
  const int k = ok_.degree(i, ctr);
  if (k < nn - os_.graph().h_param())
    throw ContractError("O_Z by query: row " + std::to_string(i) + " is not a hub");
  if (l < 0 || l >= nn) throw std::out_of_range("O_Z by query: index out of range");
  return zero_lookup(os_, i, l, k, ctr);
}

QueryOK derive_OK_by_query(const OracleSet& os) { return QueryOK(os); }
QueryOZ derive_OZ_by_query(const OracleSet& os) { return QueryOZ(os); }

}  // namespace hubsim
