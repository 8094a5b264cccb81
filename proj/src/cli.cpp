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

#include "hubsim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hubsim/dyson.hpp"
#include "hubsim/ffhub.hpp"
#include "hubsim/refcheck.hpp"
#include "hubsim/sparse_enc.hpp"

namespace hubsim {

namespace {

using nlohmann::json;

// thrown when a check fails: exit code 1
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string int_list(const std::vector<int>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

std::string edge_list(const std::vector<Edge>& e) {
  std::string s = "[";
  for (size_t i = 0; i < e.size(); ++i)
    s += (i ? ", " : "") + std::string("[") + std::to_string(e[i].first) + ", " +
         std::to_string(e[i].second) + "]";
  return s + "]";
}

std::string vec_json(const Eigen::VectorXd& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v(i));
  return s + "]";
}

std::string state_json(const DenseVector& v) {
  std::string re = "[", im = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re += (i ? ", " : "") + num(v(i).real());
    im += (i ? ", " : "") + num(v(i).imag());
  }
  return "{\n  \"re\": " + re + "],\n  \"im\": " + im + "]\n}\n";
}

DenseVector read_state(const std::string& path, int n) {
  std::ifstream f(path);
  if (!f) throw ConfigError("psi0: cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("psi0: " + path + ": " + e.what());
  }
  DenseVector v(n);
  if (j.is_object()) {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (int(re.size()) != n || int(im.size()) != n) throw ConfigError("psi0: wrong length");
    for (int i = 0; i < n; ++i) v(i) = cplx(re[i].get<double>(), im[i].get<double>());
  } else if (j.is_array()) {
    if (int(j.size()) != n) throw ConfigError("psi0: wrong length");
    for (int i = 0; i < n; ++i) {
      if (j[i].is_array()) v(i) = cplx(j[i].at(0).get<double>(), j[i].at(1).get<double>());
      else v(i) = j[i].get<double>();
    }
  } else {
    throw ConfigError("psi0: expected an array or {re, im}");
  }
  return v;
}

DenseVector make_psi0(const std::string& spec, int n) {
  if (spec == "uniform") return DenseVector::Constant(n, cplx(1.0 / std::sqrt(double(n)), 0.0));
  if (spec.rfind("basis:", 0) == 0) {
    int k = -1;
    try {
      k = std::stoi(spec.substr(6));
    } catch (const std::exception&) {
    }
    if (k < 0 || k >= n) throw ConfigError("psi0: basis index out of range in '" + spec + "'");
    DenseVector v = DenseVector::Zero(n);
    v(k) = 1.0;
    return v;
  }
  return read_state(spec, n);
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw CLI::ValidationError("bad number list '" + s + "'");
    out.push_back(x);
  }
  return out;
}

DenseMatrix cplx_of(const IntMatrix& m) { return m.cast<double>().cast<cplx>(); }

// ---------------------------------------------------------------- commands

int cmd_validate(const std::string& path) {
  const HubSparseGraph g = load_graph(path);
  const ValidationReport r = validate(g);
  std::cout << "{\n  \"ok\": " << (r.ok ? "true" : "false") << ",\n  \"issues\": "
            << json(r.issues).dump() << ",\n  \"bad_nodes\": " << int_list(r.bad_nodes)
            << "\n}\n";
  if (!r.ok) throw CheckFailed("validate: graph is not hub-sparse");
  return 0;
}

int cmd_split(const std::string& path, const std::string& out) {
  const HubSparseGraph g = load_graph(path);
  const GraphSplit sp = split(g);
  const bool exact = reconstruct(sp) == g.dense_adjacency();
  std::ostringstream o;
  o << "{\n  \"nodes\": " << sp.n_nodes << ",\n  \"hubs\": " << int_list(sp.hubs)
    << ",\n  \"counts\": {\"a_minus\": " << sp.a_minus.size() << ", \"a_h\": " << sp.a_h.size()
    << ", \"a_r\": " << sp.a_r.size() << "},\n  \"a_minus\": " << edge_list(sp.a_minus)
    << ",\n  \"a_h\": " << edge_list(sp.a_h) << ",\n  \"a_r\": " << edge_list(sp.a_r)
    << ",\n  \"reconstruction_exact\": " << (exact ? "true" : "false") << "\n}\n";
  emit(o.str(), out);
  if (!exact) throw CheckFailed("split: G - A_minus + A_h + A_r != A");
  return 0;
}

int cmd_spectrum(const std::string& path, const std::string& out) {
  const HubSparseGraph g = load_graph(path);
  const GSpectrum sp = spectrum_G(g);
  double residual = 0.0;
  if (g.n_nodes() <= 4096) {
    const Eigen::MatrixXd gd = g.dense_G().cast<double>();
    residual = std::max((gd * sp.psi_plus - sp.lambda_plus * sp.psi_plus).norm(),
                        (gd * sp.psi_minus - sp.lambda_minus * sp.psi_minus).norm());
  }
  std::ostringstream o;
  o << "{\n  \"lambda_plus\": " << num(sp.lambda_plus) << ",\n  \"lambda_minus\": "
    << num(sp.lambda_minus) << ",\n  \"zero_multiplicity\": " << g.n_nodes() - 2
    << ",\n  \"eigen_residual\": " << num(residual) << ",\n  \"psi_plus\": "
    << vec_json(sp.psi_plus) << ",\n  \"psi_minus\": " << vec_json(sp.psi_minus) << "\n}\n";
  emit(o.str(), out);
  if (residual > 1e-9) throw CheckFailed("spectrum: eigenpair residual " + num(residual));
  return 0;
}

int cmd_verify_be(const std::string& path, const std::string& ts, double eps,
                  const std::string& out) {
  const HubSparseGraph g = load_graph(path);
  const OracleSet os(g);
  const GraphSplit sp = split(g);
  const int n = g.n_nodes();
  struct Row {
    std::string name;
    Verification v;
    double alpha;
    int m;
  };
  std::vector<Row> rows;
  auto run = [&](const std::string& name, const BlockEncoding& be, const DenseMatrix& target,
                 double tol) {
    Verification v = verify(be, target);
    v.bound = std::max(tol, be.eps + 1e-9);
    v.passed = v.error <= v.bound;
    rows.push_back({name, v, be.alpha, be.m});
  };
  if (g.m_hubs() > 0) run("A_h", encode_Ah(os), cplx_of(dense_from_edges(n, sp.a_h)), 1e-10);
  run("A_r", encode_Ar(os), cplx_of(dense_from_edges(n, sp.a_r)), 1e-10);
  if (g.m_hubs() > 0) {
    run("A_minus", encode_Aminus(os), cplx_of(dense_from_edges(n, sp.a_minus)), 1e-10);
  }
  run("H2", encode_H2(os), dense_H2(g), 1e-10);
  const DenseMatrix gd = cplx_of(g.dense_G());
  for (double t : parse_doubles(ts))
    run("expG(t=" + num(t) + ")", build_expG(os, t, eps), dense_expm(gd, t), eps);
  std::ostringstream o;
  o << "{\n  \"checks\": [";
  bool all = true;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    all = all && r.v.passed;
    o << (i ? "," : "") << "\n    {\"name\": " << json(r.name).dump() << ", \"alpha\": "
      << num(r.alpha) << ", \"m\": " << r.m << ", \"error\": " << num(r.v.error)
      << ", \"bound\": " << num(r.v.bound) << ", \"passed\": " << (r.v.passed ? "true" : "false")
      << "}";
  }
  o << "\n  ],\n  \"passed\": " << (all ? "true" : "false") << "\n}\n";
  emit(o.str(), out);
  for (const auto& r : rows)
    if (!r.v.passed)
      throw CheckFailed("verify-be: " + r.name + " error " + num(r.v.error) + " > " +
                        num(r.v.bound));
  return 0;
}

struct SimArgs {
  std::string graph;
  double t = 1.0;
  double eps = 1e-3;
  std::string method = "circuit";
  std::string psi0 = "basis:0";
  bool check = false;
  std::string state_out;
  std::string out;
};

int cmd_simulate(const SimArgs& a) {
  const HubSparseGraph g = load_graph(a.graph);
  SimulateOptions opt;
  opt.method = parse_method(a.method);
  opt.check = a.check;
  const DenseVector psi0 = make_psi0(a.psi0, g.n_nodes());
  const SimulationResult r = simulate_full(g, a.t, a.eps, psi0, opt);
  emit(report_to_json(r.report), a.out);
  if (!a.state_out.empty()) emit(state_json(r.state), a.state_out);
  if (a.check && r.report.final_error_vs_reference &&
      *r.report.final_error_vs_reference > a.eps)
    throw CheckFailed("simulate: error vs reference " + num(*r.report.final_error_vs_reference) +
                      " exceeds eps " + num(a.eps));
  return 0;
}

struct BenchArgs {
  std::string graph;
  std::string ts = "1,2,4";
  double eps = 1e-3;
  std::string sizes;
  int m = 2, s = 4, h = 2;
  std::uint64_t seed = 1;
  bool no_timing = false;
  std::string out;
};

int cmd_bench(const BenchArgs& a) {
  const std::vector<double> ts = parse_doubles(a.ts);
  std::vector<BenchRow> rows;
  if (!a.graph.empty()) {
    rows = bench_rows(load_graph(a.graph), ts, a.eps, !a.no_timing);
  } else {
    if (a.sizes.empty()) throw CLI::ValidationError("bench: give a graph file or --sizes");
    for (double nd : parse_doubles(a.sizes)) {
      const HubSparseGraph g = generate(int(nd), a.m, a.s, a.h, a.seed);
      auto r = bench_rows(g, ts, a.eps, !a.no_timing);
      rows.insert(rows.end(), r.begin(), r.end());
    }
  }
  emit(bench_csv(rows, !a.no_timing), a.out);
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"hubsim: hub-sparse network Hamiltonian simulation"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  int gn = 8, gm = 2, gs = 4, gh = 2;
  std::uint64_t gseed = 1;
  std::string gout;
  auto* gen = app.add_subcommand("gen", "write a random hub-sparse graph as JSON");
  gen->add_option("--n", gn, "number of nodes N (power of two)")->required();
  gen->add_option("--m", gm, "number of hubs M")->required();
  gen->add_option("--s", gs, "regular degree bound s")->required();
  gen->add_option("--h", gh, "hub degree deficit h")->required();
  gen->add_option("--seed", gseed, "random seed");
  gen->add_option("-o,--out", gout, "output file (stdout when omitted)");

  std::string vpath;
  auto* val = app.add_subcommand("validate", "check the hub-sparse conditions");
  val->add_option("graph", vpath)->required();

  std::string spath, sout;
  auto* spl = app.add_subcommand("split", "emit the G / A_minus / A_h / A_r split");
  spl->add_option("graph", spath)->required();
  spl->add_option("-o,--out", sout);

  std::string ppath, pout;
  auto* spc = app.add_subcommand("spectrum", "emit the nonzero eigendata of G");
  spc->add_option("graph", ppath)->required();
  spc->add_option("-o,--out", pout);

  std::string bpath, bts = "0.3,1.7,10,100", bout;
  double beps = 1e-6;
  auto* vbe = app.add_subcommand("verify-be", "check every block-encoding against dense targets");
  vbe->add_option("graph", bpath)->required();
  vbe->add_option("--t", bts, "comma-separated times for the G evolution");
  vbe->add_option("--eps", beps, "target error of the G evolution");
  vbe->add_option("-o,--out", bout);

  SimArgs sa;
  auto* sim = app.add_subcommand("simulate", "evolve psi0 under the adjacency matrix");
  sim->add_option("graph", sa.graph)->required();
  sim->add_option("--t", sa.t, "evolution time");
  sim->add_option("--eps", sa.eps, "target l2 error");
  sim->add_option("--method", sa.method, "dense | classical-ff | circuit")
      ->check(CLI::IsMember({"dense", "classical-ff", "circuit"}));
  sim->add_option("--psi0", sa.psi0, "basis:k | uniform | JSON file");
  sim->add_flag("--check", sa.check, "compare with the dense reference");
  sim->add_option("--state-out", sa.state_out, "write the final state as JSON");
  sim->add_option("-o,--out", sa.out, "run report (stdout when omitted)");

  BenchArgs ba;
  auto* ben = app.add_subcommand("bench", "query-count table over t (and N), CSV");
  ben->add_option("graph", ba.graph);
  ben->add_option("--t", ba.ts, "comma-separated times");
  ben->add_option("--eps", ba.eps);
  ben->add_option("--sizes", ba.sizes, "comma-separated N, graphs generated with --m/--s/--h");
  ben->add_option("--m", ba.m);
  ben->add_option("--s", ba.s);
  ben->add_option("--h", ba.h);
  ben->add_option("--seed", ba.seed);
  ben->add_flag("--no-timing", ba.no_timing, "write wall_ms = 0 (byte-stable output)");
  ben->add_option("-o,--out", ba.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      emit(graph_to_json(generate(gn, gm, gs, gh, gseed)), gout);
      return 0;
    }
    if (*val) return cmd_validate(vpath);
    if (*spl) return cmd_split(spath, sout);
    if (*spc) return cmd_spectrum(ppath, pout);
    if (*vbe) return cmd_verify_be(bpath, bts, beps, bout);
    if (*sim) return cmd_simulate(sa);
    if (*ben) return cmd_bench(ba);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error [" << e.stage() << "]: " << e.what() << "\n";
    return 3;
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace hubsim
