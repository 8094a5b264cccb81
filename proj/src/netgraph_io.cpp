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

#include <fstream>
#include <set>
#include <sstream>

#include "hubsim/netgraph.hpp"
#include "json.hpp"

namespace hubsim {

std::string graph_to_json(const HubSparseGraph& g) {
  nlohmann::json j;
  j["nodes"] = g.n_nodes();
  j["hubs"] = g.hubs();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = edges;
  j["params"] = {{"M", g.m_hubs()}, {"h", g.h_param()}, {"s", g.s_param()}};
  return j.dump(1) + "\n";
}

HubSparseGraph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("graph JSON: ") + e.what());
  }
  try {
    int n = j.at("nodes").get<int>();
    std::vector<int> hubs = j.at("hubs").get<std::vector<int>>();
    const auto& p = j.at("params");
    int m = p.at("M").get<int>();
    int h = p.at("h").get<int>();
    int s = p.at("s").get<int>();
    if (m != static_cast<int>(hubs.size()))
      throw std::invalid_argument("graph JSON: params.M does not match the hub list");
    std::vector<Edge> edges;
    std::set<Edge> seen;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("graph JSON: edge must be a pair");
      int u = e[0].get<int>(), v = e[1].get<int>();
      if (u == v) throw std::invalid_argument("graph JSON: self-loop on node " + std::to_string(u));
      Edge key(std::min(u, v), std::max(u, v));
      if (!seen.insert(key).second)
        throw std::invalid_argument("graph JSON: duplicate edge (" + std::to_string(key.first) +
                                    "," + std::to_string(key.second) + ")");
      edges.push_back(key);
    }
    return HubSparseGraph(n, edges, hubs, h, s);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("graph JSON: ") + e.what());
  }
}

HubSparseGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return graph_from_json(ss.str());
}

void save_graph(const HubSparseGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write graph file '" + path + "'");
  out << graph_to_json(g);
}

}  // namespace hubsim
