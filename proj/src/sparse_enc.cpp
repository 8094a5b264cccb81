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

#include "hubsim/sparse_enc.hpp"

namespace hubsim {

namespace {

int layer_width(int param, int n, const char* name) {
  int k = ceil_log2(param < 1 ? 1 : param);  // non-powers of two round up
  if (k > n)
    throw ConfigError(std::string(name) + " exceeds the node count; Hadamard layer too wide");
  return k;
}

void toffoli_to(Circuit& c, const std::string& target, std::vector<Control> controls) {
  c.x(target, std::move(controls));
}

}  // namespace

BlockEncoding encode_Ah(const OracleSet& os) {
  const auto& g = os.graph();
  const int n = os.n_qubits();
  auto c = std::make_shared<Circuit>(
      "A_h", RegisterList{{"r1", 1}, {"r2", 1}, {"r3", 1}, {"r4", n}, {"sys", n}});
  if (g.m_hubs() == 0) {
    c->x("r1");
    return make_block_encoding(c, 1.0);
  }
  const int k = layer_width(g.m_hubs(), n, "M");
  if (k > 0) c->h(Slice("r4", 0, k));
  c->call(os.o_h, {"r4"});
  c->call(os.o_a, {"r4", "sys", "r3"});
  c->call(os.o_k, {"sys", "r2"});
  toffoli_to(*c, "r1", {Control{Slice("r2"), 1}, Control{Slice("r3"), 1}});
  c->call(os.o_k, {"sys", "r2"});
  c->call(os.o_a, {"r4", "sys", "r3"});
  c->swap("r4", "sys");
  c->call(os.o_h, {"r4"}, true);
  if (k > 0) c->h(Slice("r4", 0, k));
  c->x("r1");
  return make_block_encoding(c, double(g.m_hubs()));
}

BlockEncoding encode_Ar(const OracleSet& os) {
  const auto& g = os.graph();
  const int n = os.n_qubits();
  const int k = layer_width(g.s_param(), n, "s");
  auto c = std::make_shared<Circuit>(
      "A_r", RegisterList{{"r1", 1}, {"r2", 1}, {"r3", 1}, {"r4", 1}, {"r5", n}, {"sys", n}});
  if (k > 0) c->h(Slice("r5", 0, k));
  c->call(os.o_l, {"sys", "r5"});
  c->call(os.o_a, {"r5", "sys", "r4"});
  c->call(os.o_k, {"sys", "r3"});
  c->call(os.o_k, {"r5", "r2"});
  toffoli_to(*c, "r1",
             {Control{Slice("r2"), 0}, Control{Slice("r3"), 0}, Control{Slice("r4"), 1}});
  c->call(os.o_k, {"r5", "r2"});
  c->call(os.o_k, {"sys", "r3"});
  c->call(os.o_a, {"r5", "sys", "r4"});
  c->swap("r5", "sys");
  c->call(os.o_l, {"sys", "r5"}, true);
  if (k > 0) c->h(Slice("r5", 0, k));
  c->x("r1");
  return make_block_encoding(c, double(1 << k));
}

BlockEncoding encode_Aminus(const OracleSet& os) {
  const auto& g = os.graph();
  const int n = os.n_qubits();
  const int k = layer_width(g.h_param(), n, "h");
  const int hh = 1 << k;
  // the zero list of a regular row starts with its missing hubs; they must
  // all sit inside the first h entries
  for (int v : g.regular_nodes()) {
    int missing = 0;
    for (int hb : g.hubs())
      if (!g.has_edge(hb, v)) ++missing;
    if (missing > hh)
      throw ContractError("encode_Aminus: regular node " + std::to_string(v) + " misses " +
                          std::to_string(missing) + " hubs, more than h");
  }
  auto c = std::make_shared<Circuit>(
      "A_minus", RegisterList{{"r1", 1}, {"r2", 1}, {"r3", 1}, {"r4", 1}, {"r5", n}, {"sys", n}});
  if (k > 0) c->h(Slice("r5", 0, k));
  c->call(os.o_z, {"sys", "r5"});
  c->call(os.o_a, {"r5", "sys", "r4"});
  c->call(os.o_k, {"sys", "r3"});
  c->call(os.o_k, {"r5", "r2"});
  c->x("r2", {Control{Slice("r3"), 1}});
  toffoli_to(*c, "r1", {Control{Slice("r2"), 1}, Control{Slice("r4"), 0}});
  c->x("r2", {Control{Slice("r3"), 1}});
  c->call(os.o_k, {"r5", "r2"});
  c->call(os.o_k, {"sys", "r3"});
  c->call(os.o_a, {"r5", "sys", "r4"});
  c->swap("r5", "sys");
  c->call(os.o_z, {"sys", "r5"}, true);
  if (k > 0) c->h(Slice("r5", 0, k));
  c->x("r1");
  return make_block_encoding(c, double(hh));
}

BlockEncoding encode_H2(const OracleSet& os) {
  if (os.graph().m_hubs() == 0) return encode_Ar(os);
  return lcu({-1.0, 1.0, 1.0}, {encode_Aminus(os), encode_Ah(os), encode_Ar(os)});
}

DenseMatrix dense_H2(const HubSparseGraph& g) {
  return (g.dense_adjacency() - g.dense_G()).cast<double>().cast<cplx>();
}

}  // namespace hubsim
