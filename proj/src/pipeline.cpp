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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "hubsim/dyson.hpp"
#include "hubsim/ffhub.hpp"
#include "hubsim/refcheck.hpp"
#include "hubsim/sparse_enc.hpp"

namespace hubsim {

Method parse_method(const std::string& s) {
  if (s == "dense") return Method::kDense;
  if (s == "classical-ff") return Method::kClassicalFF;
  if (s == "circuit") return Method::kCircuit;
  throw ConfigError("unknown method '" + s + "' (dense, classical-ff, circuit)");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::kDense: return "dense";
    case Method::kClassicalFF: return "classical-ff";
    case Method::kCircuit: return "circuit";
  }
  return "?";
}

namespace {

struct SegmentPlan {
  DysonConfig cfg;
  int count = 0;
  double dyson_alpha = 1.0;
};

std::vector<SegmentPlan> segment_plans(const HubSparseGraph& g, double t, double eps) {
  const double a2 = alpha2(g);
  const double tau = 1.0 / (2.0 * a2);
  const int full = int(std::floor(t / tau * (1.0 + 1e-12)));
  const double rem = t - full * tau;
  std::vector<SegmentPlan> out;
  auto add = [&](double len, int count) {
    SegmentPlan p;
    p.cfg = plan_segment(g, len, eps, t);
    p.count = count;
    p.dyson_alpha = 0.0;
    for (int k = 0; k <= p.cfg.big_k; ++k) p.dyson_alpha += std::pow(a2 * len, k);
    out.push_back(p);
  };
  if (full > 0) add(tau, full);
  if (rem > 1e-12 * tau) add(rem, 1);
  return out;
}

DenseMatrix to_complex(const IntMatrix& m) { return m.cast<double>().cast<cplx>(); }

void add_tally(QueryTally& q, const QueryTally& add, std::int64_t times) {
  for (const auto& [k, v] : add) q[k] += v * times;
}

// Logical query tally of one segment: O_tau, then L_dy Dyson invocations,
// each using K dressed applications (2 log D controlled leaves and one H2).
QueryTally segment_queries(const OracleSet& os, const SegmentPlan& p, int* rounds) {
  const auto& c = p.cfg;
  const double es = c.eps_segment();
  const FpaaSchedule fs = fpaa_schedule(1.0 / p.dyson_alpha, 0.9 / p.dyson_alpha, es / 8.0);
  if (rounds) *rounds = int(fs.alpha.size());
  const std::int64_t l_dy = fs.length;  // U and U^dagger invocations
  const int ld = ceil_log2(c.big_d);
  QueryTally q;
  q["O_tau"] += 1;
  q["expG_select"] += l_dy * c.big_k * 2 * ld;
  q["H2"] += l_dy * c.big_k;
  add_tally(q, build_expG(os, c.tau, es / 8.0).unitary->query_count(), 1);
  if (c.big_k > 0) {
    QueryTally leaves;
    for (const auto& l : selectG_leaves(os, c.tau, c.big_d, es / 8.0))
      add_tally(leaves, l.unitary->query_count(), 2);
    add_tally(leaves, encode_H2(os).unitary->query_count(), 1);
    add_tally(q, leaves, l_dy * c.big_k);
  }
  return q;
}

void fill_plan(RunReport& r, const OracleSet& os, const std::vector<SegmentPlan>& plans) {
  r.segments = 0;
  for (size_t i = 0; i < plans.size(); ++i) {
    const auto& p = plans[i];
    r.segments += p.count;
    if (i == 0) {
      r.tau = p.cfg.tau;
      r.big_k = p.cfg.big_k;
      r.big_d = p.cfg.big_d;
    }
    int len = 0;
    const QueryTally q = segment_queries(os, p, &len);
    add_tally(r.queries, q, p.count);
    r.amplification_rounds[i == 0 ? "dyson" : "dyson:frac"] = len;
  }
}

void check_widths(const HubSparseGraph& g) {
  const int n = g.n_qubits();
  const int cap = qubit_cap();
  const std::vector<std::pair<std::string, int>> widths = {
      {"H2", n + h2_ancillas(g)}, {"expG", n + 8}, {"amplified_dyson", n + 2}};
  std::pair<std::string, int> widest{"", 0};
  for (const auto& w : widths)
    if (w.second > widest.second) widest = w;
  if (widest.second > cap)
    throw ResourceError(widest.first, "stage '" + widest.first + "' needs " +
                                          std::to_string(widest.second) +
                                          " qubits, cap is " + std::to_string(cap));
  if (n > 12)
    throw ResourceError("extract_block", "system of " + std::to_string(n) +
                                             " qubits exceeds the 12-qubit dense block limit");
}

double err(const DenseMatrix& a, const DenseMatrix& b) { return spectral_norm(a - b); }

}  // namespace

RunReport plan_report(const HubSparseGraph& g, double t, double eps) {
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (t < 0.0) throw ConfigError("t must be non-negative");
  RunReport r;
  r.method = "circuit";
  r.t = t;
  r.eps = eps;
  if (t == 0.0) return r;
  fill_plan(r, OracleSet(g), segment_plans(g, t, eps));
  return r;
}

SimulationResult simulate_full(const HubSparseGraph& g, double t, double eps,
                               const DenseVector& psi0, const SimulateOptions& opt) {
  const int nn = g.n_nodes();
  if (psi0.size() != nn) throw std::invalid_argument("simulate_full: psi0 has wrong dimension");
  if (std::abs(psi0.norm() - 1.0) > 1e-9) throw ConfigError("simulate_full: psi0 not normalised");
  if (!(eps > 0.0)) throw ConfigError("simulate_full: eps must be positive");
  if (t < 0.0) throw ConfigError("simulate_full: t must be non-negative");
  if (!validate(g).ok) throw ConfigError("simulate_full: graph is not hub-sparse");

  SimulationResult res;
  RunReport& rep = res.report;
  rep.method = method_name(opt.method);
  rep.t = t;
  rep.eps = eps;
  DenseVector psi = psi0;

  if (opt.method == Method::kCircuit) check_widths(g);

  if (t == 0.0) {
    // nothing to evolve
  } else if (opt.method == Method::kDense) {
    if (nn > 4096) throw ResourceError("dense_expm", "dense method limited to N <= 4096");
    psi = dense_expm(to_complex(g.dense_adjacency()), t) * psi0;
  } else {
    const auto plans = segment_plans(g, t, eps);
    const OracleSet os(g);
    fill_plan(rep, os, plans);
    const bool measure = opt.measure_stages && nn <= 4096;
    DenseMatrix a_dense, g_dense, h2_dense;
    if (measure) {
      a_dense = to_complex(g.dense_adjacency());
      g_dense = to_complex(g.dense_G());
      h2_dense = dense_H2(g);
    }

    if (opt.method == Method::kClassicalFF) {
      for (size_t i = 0; i < plans.size(); ++i) {
        const auto& p = plans[i];
        const std::string sfx = i == 0 ? "" : ":frac";
        ExactDressedFamily fam(g, p.cfg.tau, p.cfg.big_d);
        for (int c = 0; c < p.count; ++c) {
          const auto terms = dyson_terms(fam, p.cfg.big_k, DenseMatrix(psi));
          DenseMatrix v = DenseMatrix::Zero(nn, 1);
          for (const auto& tk : terms) v += tk;
          psi = fam.rotate(p.cfg.tau, v).col(0);
        }
        const double es = p.cfg.eps_segment();
        rep.stages.push_back({"dyson_series" + sfx, 6.0 * es / 8.0, std::nullopt});
        rep.stages.push_back({"segment" + sfx, es, std::nullopt});
      }
    } else {
      BlockEncoding h2 = encode_H2(os);
      const DenseMatrix h2blk = h2.block();
      if (std::abs(h2.alpha - alpha2(g)) > 1e-12)
        throw std::logic_error("simulate_full: encode_H2 alpha disagrees with alpha2");
      if (measure) rep.stages.push_back({"H2", 0.0, err(h2.alpha * h2blk, h2_dense)});
      for (size_t i = 0; i < plans.size(); ++i) {
        const auto& p = plans[i];
        const auto& cfg = p.cfg;
        const std::string sfx = i == 0 ? "" : ":frac";
        const double es = cfg.eps_segment();
        std::vector<DenseMatrix> leaves;
        for (const auto& l : selectG_leaves(os, cfg.tau, cfg.big_d, es / 8.0))
          leaves.push_back(l.block());
        BlockDressedFamily fam(leaves, h2blk, alpha1(g), h2.alpha, cfg.tau, cfg.big_d);
        DysonSegment dy = dyson_segment(fam, cfg, h2.m);
        BlockEncoding amp = fixed_point_aa(dy.encoding, 0.9 / dy.alpha, es / 8.0);
        const DenseMatrix amp_blk = amp.block();
        const DenseMatrix o_tau = build_expG(os, cfg.tau, es / 8.0).block();
        const DenseMatrix step = o_tau * amp_blk;
        for (int c = 0; c < p.count; ++c) psi = step * psi;

        std::optional<double> a_sel, a_dy, a_amp, a_ot, a_seg;
        if (measure) {
          double sel = 0.0;
          for (size_t b = 0; b < leaves.size(); ++b)
            sel += err(leaves[b],
                       dense_expm(g_dense, cfg.tau * double(std::int64_t(1) << b) / cfg.big_d));
          const DenseMatrix eg = dense_expm(g_dense, cfg.tau);
          const DenseMatrix ea = dense_expm(a_dense, cfg.tau);
          const DenseMatrix frame = eg.adjoint() * ea;
          a_sel = sel;
          a_dy = err(dy.series, frame);
          a_amp = err(amp_blk, frame);
          a_ot = err(o_tau, eg);
          a_seg = err(step, ea);
        }
        rep.stages.push_back({"select_G" + sfx, es / 8.0, a_sel});
        rep.stages.push_back({"dyson_series" + sfx, 6.0 * es / 8.0, a_dy});
        rep.stages.push_back({"amplified" + sfx, 7.0 * es / 8.0, a_amp});
        rep.stages.push_back({"O_tau" + sfx, es / 8.0, a_ot});
        rep.stages.push_back({"segment" + sfx, es, a_seg});
      }
    }
  }

  if (opt.check) {
    if (nn <= 4096) {
      const DenseVector ref = t == 0.0 ? psi0 : DenseVector(dense_expm(to_complex(g.dense_adjacency()), t) * psi0);
      rep.final_error_vs_reference = distance(psi, ref);
      rep.reference_note = "dense_expm(A, t) psi0";
    } else {
      rep.reference_note = "N > 4096: dense reference skipped";
    }
  }
  res.state = psi;
  return res;
}

// ---------------------------------------------------------------- output

namespace {

std::string num(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string str(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string report_to_json(const RunReport& r) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"method\": " << str(r.method) << ",\n";
  o << "  \"t\": " << num(r.t) << ",\n";
  o << "  \"eps\": " << num(r.eps) << ",\n";
  o << "  \"tau\": " << num(r.tau) << ",\n";
  o << "  \"segments\": " << r.segments << ",\n";
  o << "  \"K\": " << r.big_k << ",\n";
  o << "  \"D\": " << r.big_d << ",\n";
  o << "  \"queries\": {";
  bool first = true;
  for (const auto& [k, v] : r.queries) {
    o << (first ? "" : ",") << "\n    " << str(k) << ": " << v;
    first = false;
  }
  o << (r.queries.empty() ? "" : "\n  ") << "},\n";
  o << "  \"amplification_rounds\": {";
  first = true;
  for (const auto& [k, v] : r.amplification_rounds) {
    o << (first ? "" : ",") << "\n    " << str(k) << ": " << v;
    first = false;
  }
  o << (r.amplification_rounds.empty() ? "" : "\n  ") << "},\n";
  o << "  \"stages\": [";
  first = true;
  for (const auto& s : r.stages) {
    o << (first ? "" : ",") << "\n    {\"name\": " << str(s.name) << ", \"budget\": " << num(s.budget)
      << ", \"achieved\": " << (s.achieved ? num(*s.achieved) : std::string("null")) << "}";
    first = false;
  }
  o << (r.stages.empty() ? "" : "\n  ") << "]";
  if (r.final_error_vs_reference)
    o << ",\n  \"final_error_vs_reference\": " << num(*r.final_error_vs_reference);
  if (!r.reference_note.empty()) o << ",\n  \"reference_note\": " << str(r.reference_note);
  o << "\n}\n";
  return o.str();
}

std::vector<BenchRow> bench_rows(const HubSparseGraph& g, const std::vector<double>& ts, double eps,
                                 bool timing) {
  std::vector<BenchRow> rows;
  for (double t : ts) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunReport r = plan_report(g, t, eps);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& [k, v] : r.queries) {
      BenchRow b;
      b.n = g.n_nodes();
      b.m = g.m_hubs();
      b.s = g.s_param();
      b.h = g.h_param();
      b.t = t;
      b.eps = eps;
      b.oracle = k;
      b.count = v;
      b.wall_ms = timing ? ms : 0.0;
      rows.push_back(b);
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows, bool timing) {
  std::ostringstream o;
  o << "N,M,s,h,t,eps,oracle,query_count,wall_ms\n";
  for (const auto& b : rows) {
    o << b.n << ',' << b.m << ',' << b.s << ',' << b.h << ',' << num(b.t) << ',' << num(b.eps)
      << ',' << b.oracle << ',' << b.count << ',';
    if (timing) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3f", b.wall_ms);
      o << buf;
    } else {
      o << '0';
    }
    o << '\n';
  }
  return o.str();
}

}  // namespace hubsim
