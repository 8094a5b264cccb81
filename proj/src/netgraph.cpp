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

#include "hubsim/netgraph.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace hubsim {

HubSparseGraph::HubSparseGraph(int n_nodes, const std::vector<Edge>& edges, std::vector<int> hubs,
                               int h_param, int s_param)
    : n_(n_nodes), adj_(n_nodes), hubs_(std::move(hubs)), hub_flag_(n_nodes, 0), h_(h_param),
      s_(s_param) {
  if (n_nodes < 1) throw std::invalid_argument("graph needs at least one node");
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") out of range");
    if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (int i = 0; i < n_; ++i) {
    auto& a = adj_[i];
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
      throw std::invalid_argument("duplicate edge at node " + std::to_string(i));
  }
  std::sort(hubs_.begin(), hubs_.end());
  if (std::adjacent_find(hubs_.begin(), hubs_.end()) != hubs_.end())
    throw std::invalid_argument("duplicate hub index");
  for (int hb : hubs_) {
    if (hb < 0 || hb >= n_) throw std::invalid_argument("hub index out of range");
    hub_flag_[hb] = 1;
  }
}

bool HubSparseGraph::has_edge(int i, int j) const {
  const auto& a = adj_.at(i);
  return std::binary_search(a.begin(), a.end(), j);
}

std::vector<int> HubSparseGraph::regular_nodes() const {
  std::vector<int> r;
  for (int i = 0; i < n_; ++i)
    if (!hub_flag_[i]) r.push_back(i);
  return r;
}

std::vector<Edge> HubSparseGraph::edges() const {
  std::vector<Edge> e;
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) e.emplace_back(u, v);
  return e;
}

IntMatrix HubSparseGraph::dense_adjacency() const {
  IntMatrix a = IntMatrix::Zero(n_, n_);
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u]) a(u, v) = 1;
  return a;
}

IntMatrix HubSparseGraph::dense_G() const { return hubsim::dense_G(n_, hubs_); }

IntMatrix dense_G(int n, const std::vector<int>& hubs) {
  std::vector<char> f(n, 0);
  for (int h : hubs) f[h] = 1;
  IntMatrix g = IntMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = (f[i] != f[j]) ? 1 : 0;
  return g;
}

IntMatrix dense_from_edges(int n, const std::vector<Edge>& edges) {
  IntMatrix a = IntMatrix::Zero(n, n);
  for (const auto& [u, v] : edges) {
    a(u, v) = 1;
    a(v, u) = 1;
  }
  return a;
}

IntMatrix reconstruct(const GraphSplit& sp) {
  return dense_G(sp.n_nodes, sp.hubs) - dense_from_edges(sp.n_nodes, sp.a_minus) +
         dense_from_edges(sp.n_nodes, sp.a_h) + dense_from_edges(sp.n_nodes, sp.a_r);
}

// ---------------------------------------------------------------- validate

namespace {
bool pow2_or_zero(int x) { return x == 0 || is_pow2(x); }
}  // namespace

ValidationReport validate(const HubSparseGraph& g) {
  ValidationReport rep;
  auto fail = [&](const std::string& msg, int node = -1) {
    rep.ok = false;
    rep.issues.push_back(msg);
    if (node >= 0) rep.bad_nodes.push_back(node);
  };
  const int n = g.n_nodes();
  if (!is_pow2(n)) fail("N=" + std::to_string(n) + " is not a power of two");
  if (!pow2_or_zero(g.m_hubs())) fail("M=" + std::to_string(g.m_hubs()) + " is not a power of two");
  if (!is_pow2(g.h_param())) fail("h=" + std::to_string(g.h_param()) + " is not a power of two");
  if (!is_pow2(g.s_param())) fail("s=" + std::to_string(g.s_param()) + " is not a power of two");
  for (int i = 0; i < n; ++i) {
    for (int j : g.neighbors(i)) {
      if (j == i) fail("self-loop at node " + std::to_string(i), i);
      else if (!g.has_edge(j, i))
        fail("asymmetric link " + std::to_string(i) + "->" + std::to_string(j), i);
    }
    if (g.is_hub(i)) {
      if (g.degree(i) < n - g.h_param())
        fail("hub " + std::to_string(i) + " has degree " + std::to_string(g.degree(i)) +
                 " < N-h = " + std::to_string(n - g.h_param()),
             i);
    } else if (g.degree(i) > g.s_param()) {
      fail("regular node " + std::to_string(i) + " has degree " + std::to_string(g.degree(i)) +
               " > s = " + std::to_string(g.s_param()),
           i);
    }
  }
  std::sort(rep.bad_nodes.begin(), rep.bad_nodes.end());
  rep.bad_nodes.erase(std::unique(rep.bad_nodes.begin(), rep.bad_nodes.end()), rep.bad_nodes.end());
  return rep;
}

// ---------------------------------------------------------------- generate

void check_generator_params(int n, int m, int s, int h) {
  if (!is_pow2(n) || n < 2) throw ConfigError("n_nodes must be a power of two >= 2");
  if (!pow2_or_zero(m)) throw ConfigError("m_hubs must be zero or a power of two");
  if (!is_pow2(s)) throw ConfigError("s_param must be a power of two");
  if (!is_pow2(h)) throw ConfigError("h_param must be a power of two");
  if (m >= n) throw ConfigError("m_hubs must be smaller than n_nodes");
  if (s > n) throw ConfigError("s_param must not exceed n_nodes");
  if (h > n) throw ConfigError("h_param must not exceed n_nodes");
  if (m == 0) return;
  if (n - h <= s)
    throw ConfigError("need N-h > s so hubs and regular nodes are distinguishable (N-h=" +
                      std::to_string(n - h) + ", s=" + std::to_string(s) + ")");
  const long deficit = std::max(0, m - s);  // hubs each regular node must miss
  if (deficit > h)
    throw ConfigError("regular nodes would miss " + std::to_string(deficit) +
                      " hubs, more than h=" + std::to_string(h));
  if (static_cast<long>(n - m) * deficit > static_cast<long>(m) * (h - 1))
    throw ConfigError("infeasible: regular nodes cannot fit all hub links under s=" +
                      std::to_string(s) + " while every hub keeps degree >= N-h=" +
                      std::to_string(n - h));
}

HubSparseGraph generate(int n, int m, int s, int h, std::uint64_t seed) {
  check_generator_params(n, m, s, h);
  std::mt19937_64 rng(seed);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> hubs(perm.begin(), perm.begin() + m);
  std::sort(hubs.begin(), hubs.end());
  std::vector<char> is_hub(n, 0);
  for (int x : hubs) is_hub[x] = 1;
  std::vector<int> regs;
  for (int i = 0; i < n; ++i)
    if (!is_hub[i]) regs.push_back(i);

  std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
  std::vector<int> deg(n, 0), missing(n, 0);  // hubs: missing links; regular: missing hubs
  auto link = [&](int u, int v) {
    a[u][v] = a[v][u] = 1;
    ++deg[u];
    ++deg[v];
  };
  auto unlink = [&](int u, int v) {
    a[u][v] = a[v][u] = 0;
    --deg[u];
    --deg[v];
    ++missing[u];
    ++missing[v];
  };
  for (int hb : hubs)
    for (int v = 0; v < n; ++v)
      if (v != hb && !(is_hub[v] && v < hb)) link(hb, v);

  // regular nodes shed hub links until their degree fits under s
  std::vector<int> order = regs;
  std::shuffle(order.begin(), order.end(), rng);
  for (int r : order) {
    while (deg[r] > s) {
      std::vector<int> cand;
      for (int hb : hubs)
        if (a[hb][r] && missing[hb] < h - 1) cand.push_back(hb);
      if (cand.empty()) throw ConfigError("generator ran out of hub deletion budget");
      std::stable_sort(cand.begin(), cand.end(),
                       [&](int x, int y) { return missing[x] < missing[y]; });
      size_t top = 0;
      while (top < cand.size() && missing[cand[top]] == missing[cand[0]]) ++top;
      std::uniform_int_distribution<size_t> pick(0, top - 1);
      unlink(cand[pick(rng)], r);
    }
  }

  // optional extra deletions, within every budget
  std::vector<int> horder = hubs;
  std::shuffle(horder.begin(), horder.end(), rng);
  for (int hb : horder) {
    int budget = h - 1 - missing[hb];
    if (budget <= 0) continue;
    std::uniform_int_distribution<int> cnt(0, budget);
    int want = cnt(rng);
    std::vector<int> others;
    for (int v = 0; v < n; ++v)
      if (v != hb && a[hb][v]) others.push_back(v);
    std::shuffle(others.begin(), others.end(), rng);
    for (int v : others) {
      if (want == 0) break;
      if (missing[hb] >= h - 1) break;
      bool ok = is_hub[v] ? missing[v] < h - 1 : missing[v] < h;
      if (!ok) continue;
      unlink(hb, v);
      --want;
    }
  }

  // regular-regular links under the degree cap
  std::vector<Edge> pairs;
  for (size_t i = 0; i < regs.size(); ++i)
    for (size_t j = i + 1; j < regs.size(); ++j) pairs.emplace_back(regs[i], regs[j]);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (const auto& [u, v] : pairs)
    if (deg[u] < s && deg[v] < s && coin(rng)) link(u, v);

  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (a[u][v]) edges.emplace_back(u, v);
  HubSparseGraph g(n, edges, hubs, h, s);
  auto rep = validate(g);
  if (!rep.ok) throw std::logic_error("generator produced an invalid graph: " + rep.issues[0]);
  return g;
}

// ---------------------------------------------------------------- split

GraphSplit split(const HubSparseGraph& g) {
  auto rep = validate(g);
  if (!rep.ok) throw std::invalid_argument("cannot split an invalid graph: " + rep.issues[0]);
  GraphSplit sp;
  sp.n_nodes = g.n_nodes();
  sp.hubs = g.hubs();
  for (int hb : g.hubs())
    for (int v = 0; v < g.n_nodes(); ++v)
      if (!g.is_hub(v) && !g.has_edge(hb, v)) sp.a_minus.emplace_back(hb, v);
  for (const auto& [u, v] : g.edges()) {
    if (g.is_hub(u) && g.is_hub(v)) sp.a_h.emplace_back(u, v);
    else if (!g.is_hub(u) && !g.is_hub(v)) sp.a_r.emplace_back(u, v);
  }
  return sp;
}

HubSparseGraph dg8() {
  std::vector<Edge> e;
  for (int j = 0; j <= 6; ++j) e.emplace_back(j, 7);
  for (int j = 1; j <= 5; ++j) e.emplace_back(j, 6);
  e.emplace_back(1, 2);
  return HubSparseGraph(8, e, {6, 7}, 2, 4);
}

}  // namespace hubsim
