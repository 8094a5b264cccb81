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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "hubsim/dyson.hpp"
#include "hubsim/ffhub.hpp"
#include "hubsim/refcheck.hpp"
#include "hubsim/sparse_enc.hpp"
#include "oracle_ref.hpp"

using namespace hubsim;

namespace {

// tolerances
constexpr double kSpectrumTol = 1e-9;
constexpr double kSplitSeconds = 10.0;
constexpr double kBlockTol = 1e-10;
constexpr double kBlockSeconds = 30.0;
constexpr double kExpGEps = 1e-6;
constexpr double kOzConstant = 4.0;
constexpr double kTierAEps = 1e-3;
constexpr double kTierASeconds = 300.0;
constexpr double kRatioSlack = 1.5;
constexpr double kDoublingRatio = 0.5 * (1.0 + 1e-3);
constexpr double kOdeTol = 1e-10;
constexpr double kLinearFit = 0.15;
constexpr double kCrossTol = 1e-9;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

void criterion1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  int exact = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 8 << (k % 6);  // 8 .. 256
    const auto p = ref::random_params(rng, n);
    const auto g = generate(p.n, p.m, p.s, p.h, rng());
    if (reconstruct(split(g)) == g.dense_adjacency()) ++exact;
  }
  const double sec = since(t0);
  report(1, exact == 100 && sec < kSplitSeconds,
         fmt("split identity exact on %.0f/100 graphs, N in 8..256, %.2f s (limit %.0f s)", exact,
             sec, kSplitSeconds));
}

void criterion2() {
  double worst = 0.0;
  bool counts = true;
  for (int n : {8, 16, 32, 64})
    for (int m : {1, 2, 4}) {
      const auto g = generate(n, m, 4, 2, std::uint64_t(n * 10 + m));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.dense_G().cast<double>());
      const Eigen::VectorXd ev = es.eigenvalues();  // ascending
      const double lam = std::sqrt(double(m) * (n - m));
      int zeros = 0;
      for (int k = 0; k < n; ++k) zeros += std::abs(ev(k)) < kSpectrumTol ? 1 : 0;
      counts = counts && zeros == n - 2;
      worst = std::max({worst, std::abs(ev(0) + lam), std::abs(ev(n - 1) - lam)});
    }
  report(2, counts && worst <= kSpectrumTol,
         fmt("N-2 zero eigenvalues on all 12 (N, M); max |lambda -+ sqrt(M(N-M))| = %.2e "
             "(tol %.0e)",
             worst, kSpectrumTol));
}

void criterion3() {
  const auto t0 = Clock::now();
  std::vector<HubSparseGraph> gs = {dg8()};
  std::mt19937_64 rng(303);
  for (int k = 0; k < 20; ++k) {
    const int n = k % 2 ? 16 : 8;
    const auto p = ref::random_params(rng, n);
    gs.push_back(generate(p.n, p.m, p.s, p.h, rng()));
  }
  double worst = 0.0;
  bool alphas = true;
  for (const auto& g : gs) {
    const OracleSet os(g);
    const GraphSplit sp = split(g);
    const int n = g.n_nodes();
    auto target = [&](const std::vector<Edge>& e) {
      return DenseMatrix(dense_from_edges(n, e).cast<double>().cast<cplx>());
    };
    const BlockEncoding ah = encode_Ah(os), ar = encode_Ar(os), am = encode_Aminus(os);
    alphas = alphas && ah.alpha == g.m_hubs() && ar.alpha == g.s_param() &&
             am.alpha == g.h_param();
    worst = std::max({worst, verify(ah, target(sp.a_h)).error, verify(ar, target(sp.a_r)).error,
                      verify(am, target(sp.a_minus)).error});
  }
  const double sec = since(t0);
  report(3, alphas && worst <= kBlockTol && sec < kBlockSeconds,
         fmt("A_h, A_r, A_minus on DG8 + 20 random graphs: max error %.2e (tol %.0e), %.2f s",
             worst, kBlockTol, sec));
}

void criterion4() {
  const auto g = dg8();
  const OracleSet os(g);
  const DenseMatrix gd = g.dense_G().cast<double>().cast<cplx>();
  double worst = 0.0;
  std::vector<std::int64_t> gates;
  for (double t : {0.3, 1.7, 10.0, 100.0}) {
    const BlockEncoding e = build_expG(os, t, kExpGEps);
    worst = std::max(worst, verify(e, dense_expm(gd, t)).error);
    gates.push_back(e.unitary->gate_count());
  }
  bool same = true;
  for (auto c : gates) same = same && c == gates[0];
  report(4, same && worst <= kExpGEps,
         fmt("expG on DG8, t in {0.3, 1.7, 10, 100}: max error %.2e (tol %.0e), gate count %.0f "
             "for every t",
             worst, kExpGEps, double(gates[0])) +
             (same ? "" : " [gate counts differ]"));
}

void criterion5() {
  bool ok_k = true, ok_z = true;
  double worst_k = 0.0, worst_c = 0.0;
  for (int n : {8, 16, 32, 64}) {
    const auto g = generate(n, 2, 4, 2, std::uint64_t(500 + n));
    const OracleSet os(g);
    const QueryOK qk = derive_OK_by_query(os);
    const QueryOZ qz = derive_OZ_by_query(os);
    const int logn = ceil_log2(n);
    for (int i = 0; i < n; ++i) {
      QueryCounter c;
      ok_k = ok_k && qk.evaluate(i, c) == os.k(i);
      const double calls = double(c.get("O_L"));
      worst_k = std::max(worst_k, calls / (2 * logn + 2));
      ok_k = ok_k && calls <= 2 * logn + 2;
    }
    for (int i : g.hubs())
      for (int l = 0; l < n; ++l) {
        QueryCounter c;
        ok_z = ok_z && qz.evaluate(i, l, c) == os.q(l, i);
        worst_c = std::max(worst_c, double(c.get("O_L")) / (g.h_param() * logn));
      }
  }
  report(5, ok_k && ok_z && worst_c <= kOzConstant,
         fmt("O_K by query: max O_L calls / (2 log N + 2) = %.2f; O_Z by query: max O_L calls / "
             "(h log N) = %.2f (limit %.0f); values match the tables",
             worst_k, worst_c, kOzConstant));
}

void criterion6() {
  const auto g = dg8();
  DenseVector psi = DenseVector::Zero(8);
  psi(0) = 1.0;
  const DenseMatrix a = g.dense_adjacency().cast<double>().cast<cplx>();
  double worst = 0.0, slowest = 0.0;
  std::string detail;
  for (double t : {0.5, 1.0, 2.0}) {
    const auto t0 = Clock::now();
    SimulateOptions opt;
    opt.method = Method::kCircuit;
    opt.measure_stages = false;
    const SimulationResult r = simulate_full(g, t, kTierAEps, psi, opt);
    const double sec = since(t0);
    const double err = distance(r.state, dense_expm(a, t) * psi);
    worst = std::max(worst, err);
    slowest = std::max(slowest, sec);
    detail += fmt(" t=%.1f: %.2e in %.1f s;", t, err, sec);
  }
  report(6, worst <= kTierAEps && slowest < kTierASeconds,
         "circuit tier on DG8, eps 1e-3, psi0 = |0>:" + detail +
             fmt(" max %.2e (tol %.0e)", worst, kTierAEps));
}

struct DysonCheck {
  bool ok = true;
  double worst_ratio_k = 0.0;   // observed / allowed
  double worst_ratio_d = 0.0;
};

void dyson_checks(const HubSparseGraph& g, int log_d_ratio, DysonCheck& out) {
  const double a2 = alpha2(g);
  const double tau = 1.0 / (2.0 * a2);
  const DenseVector psi = ref::random_state(g.n_nodes(), 77);
  const DenseVector target = rotated_reference(g, tau, psi, kOdeTol);
  auto error_of = [&](const ExactDressedFamily& fam, const std::vector<DenseMatrix>& terms, int k) {
    DenseMatrix v = DenseMatrix::Zero(g.n_nodes(), 1);
    for (int j = 0; j <= k; ++j) v += terms[j];
    return (DenseVector(fam.rotate(tau, v).col(0)) - target).norm();
  };
  {
    const ExactDressedFamily fam(g, tau, std::int64_t(1) << log_d_ratio);
    const auto terms = dyson_terms(fam, 4, DenseMatrix(psi));
    for (int k = 1; k <= 3; ++k) {
      const double ratio = error_of(fam, terms, k + 1) / error_of(fam, terms, k);
      const double allowed = std::exp(1.0) * a2 * tau / (k + 1) * kRatioSlack;
      out.worst_ratio_k = std::max(out.worst_ratio_k, ratio / allowed);
      out.ok = out.ok && ratio <= allowed;
    }
  }
  double prev = -1.0;
  for (int big_d : {16, 32, 64, 128}) {
    const ExactDressedFamily fam(g, tau, big_d);
    const auto terms = dyson_terms(fam, 12, DenseMatrix(psi));
    const double e = error_of(fam, terms, 12);
    if (prev > 0.0) {
      out.worst_ratio_d = std::max(out.worst_ratio_d, e / prev);
      out.ok = out.ok && e / prev <= kDoublingRatio;
    }
    prev = e;
  }
}

void criterion7() {
  DysonCheck c;
  dyson_checks(dg8(), 20, c);
  dyson_checks(generate(32, 2, 4, 4, 32), 18, c);
  dyson_checks(generate(64, 4, 8, 4, 64), 18, c);
  report(7, c.ok,
         fmt("Dyson segment vs rotated_reference (tol 1e-10) on N = 8, 32, 64: worst "
             "error(K+1)/error(K) at %.2f of (e a2 tau/(K+1)) x 1.5; worst D-doubling ratio %.4f "
             "(limit %.4f)",
             c.worst_ratio_k, c.worst_ratio_d, kDoublingRatio));
}

void criterion8() {
  const auto g = dg8();
  const std::vector<double> ts = {1.0, 2.0, 4.0};
  std::vector<double> counts;
  for (double t : ts) counts.push_back(double(plan_report(g, t, 1e-3).queries.at("O_tau")));
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < ts.size(); ++i) {
    num += ts[i] * counts[i];
    den += ts[i] * ts[i];
  }
  const double slope = num / den;
  double worst = 0.0;
  for (size_t i = 0; i < ts.size(); ++i)
    worst = std::max(worst, std::abs(counts[i] - slope * ts[i]) / (slope * ts[i]));
  const std::string a = bench_csv(bench_rows(g, ts, 1e-3, false), false);
  const std::string b = bench_csv(bench_rows(g, ts, 1e-3, false), false);
  report(8, worst <= kLinearFit && a == b,
         fmt("O_tau calls at t = 1, 2, 4: %.0f, %.0f, %.0f", counts[0], counts[1], counts[2]) +
             fmt("; max deviation from linear fit %.1f%% (limit %.0f%%); bench CSV ", 100 * worst,
                 100 * kLinearFit) +
             (a == b ? "byte-identical" : "differs between runs"));
}

void criterion9() {
  std::vector<HubSparseGraph> fixtures = {dg8(), generate(8, 0, 2, 1, 3), generate(16, 2, 4, 4, 4),
                                          generate(32, 4, 4, 2, 5), generate(64, 4, 8, 4, 6)};
  double worst = 0.0;
  for (const auto& g : fixtures) {
    const DenseMatrix a = g.dense_adjacency().cast<double>().cast<cplx>();
    for (double t : {0.5, 1.0}) {
      DenseVector e0 = DenseVector::Zero(g.n_nodes());
      e0(0) = 1.0;
      for (const DenseVector& psi : {e0, DenseVector(ref::random_state(g.n_nodes(), 9))})
        worst = std::max(worst, distance(dense_expm(a, t) * psi,
                                         rotated_reference(g, t, psi, kOdeTol)));
    }
  }
  report(9, worst <= kCrossTol,
         fmt("dense_expm vs rotated_reference on 5 fixtures x 2 times x 2 states: max %.2e "
             "(tol %.0e)",
             worst, kCrossTol));
}

}  // namespace

int main() {
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  guarded(9, criterion9);
  return failures == 0 ? 0 : 1;
}
