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

#ifndef HUBSIM_FFHUB_HPP_
#define HUBSIM_FFHUB_HPP_

#include "hubsim/blockenc.hpp"
#include "hubsim/netgraph.hpp"
#include "hubsim/oracles.hpp"

namespace hubsim {

/// The two nonzero eigenpairs of G. All other eigenvalues vanish.
struct GSpectrum {
  double lambda_plus = 0.0;   //  sqrt(M (N - M))
  double lambda_minus = 0.0;  // -sqrt(M (N - M))
  Eigen::VectorXd psi_plus;   // (hub-uniform + regular-uniform) / sqrt 2
  Eigen::VectorXd psi_minus;  // (hub-uniform - regular-uniform) / sqrt 2
};

/// Throws ConfigError when M = 0 or M = N (G has no nonzero eigenvalue).
GSpectrum spectrum_G(const HubSparseGraph& g);

/// alpha of the P+- preparation encodings: (1 + sqrt(N/(N-M))) / sqrt 2.
double p_pm_alpha(int n_nodes, int m_hubs);
/// beta = alpha_P^2
double expG_beta(int n_nodes, int m_hubs);

/// Preparation of Psi+ (sign > 0) or Psi- (sign < 0): a 2-ancilla encoding
/// whose block maps |0^n> to Psi+- / alpha.
BlockEncoding build_P_pm(const OracleSet& os, int sign);

/// The phase circuit U1 (with_phase) or the projector circuit U2, each a
/// (beta, 5)-encoding of e^{-i lambda t} P+ + e^{i lambda t} P- (phase) or
/// P+ + P- (projector).
BlockEncoding build_expG_branch(const OracleSet& os, double t, bool with_phase);

/// LCU (beta, -beta, 1) over U1, U2, identity: a (2 beta + 1, 7)-encoding of e^{-iGt}.
BlockEncoding build_expG_pre(const OracleSet& os, double t);

/// Amplified (1, 8, eps)-encoding of e^{-iGt}. M = 0 gives the identity.
BlockEncoding build_expG(const OracleSet& os, double t, double eps);
BlockEncoding build_expG(const HubSparseGraph& g, double t, double eps);

/// e^{-iGt} applied through the rank-2 formula, O(N) per column.
DenseVector classical_expG_apply(const HubSparseGraph& g, double t, const DenseVector& psi);
DenseMatrix classical_expG_apply(const HubSparseGraph& g, double t, const DenseMatrix& cols);

/// Dense e^{-iGt} from the rank-2 formula.
DenseMatrix classical_expG_matrix(const HubSparseGraph& g, double t);

}  // namespace hubsim

#endif  // HUBSIM_FFHUB_HPP_
