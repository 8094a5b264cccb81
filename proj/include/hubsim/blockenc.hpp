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

#ifndef HUBSIM_BLOCKENC_HPP_
#define HUBSIM_BLOCKENC_HPP_

#include <string>
#include <vector>

#include "hubsim/qstate.hpp"

namespace hubsim {

/// (alpha, m, eps) block-encoding. The circuit lists its ancilla registers
/// first and the n-qubit system register "sys" last.
///
/// `m` is the ancilla count of the construction being represented. For
/// circuit-built encodings it equals the circuit's ancilla width; encodings
/// evaluated through a dilation (see dilation()) keep the logical count.
struct BlockEncoding {
  CircuitPtr unitary;
  double alpha = 1.0;
  int m = 0;
  double eps = 0.0;
  int n = 0;
  bool dilated = false;

  DenseMatrix block() const { return extract_block(*unitary); }
  int circuit_ancillas() const { return unitary->total_width() - n; }
};

/// Call arguments for a block-encoding circuit: its ancilla registers are
/// packed into `anc` from bit `base` upward (first register highest) and
/// its "sys" register goes to `sys`.
std::vector<Slice> ancilla_args(const Circuit& callee, const std::string& anc, int base,
                                const Slice& sys = Slice("sys"));

/// Wraps a circuit, reading m and n from its registers.
BlockEncoding make_block_encoding(CircuitPtr c, double alpha, double eps = 0.0);

/// Identity on n system qubits with m idle ancillas.
BlockEncoding identity_encoding(int n, int m = 0);

struct Verification {
  double error = 0.0;  // || target - alpha * block ||
  double bound = 0.0;  // eps + 1e-9
  bool passed = false;
};

Verification verify(const BlockEncoding& be, const DenseMatrix& target);

/// Prepare pair for weights w: v|0> has amplitudes sqrt(|w_j| / |w|_1) and
/// v_prime|0> carries the conjugate phases, so that
/// <0| v_prime^dagger SELECT v |0> = sum_j w_j U_j / |w|_1.
struct PreparePair {
  DenseMatrix v;
  DenseMatrix v_prime;
};

PreparePair make_prepare(const std::vector<cplx>& weights, int k_qubits);

/// Unitary whose first column is the unit vector `col`.
DenseMatrix unitary_with_first_column(const DenseVector& col);

BlockEncoding lcu(const std::vector<double>& coeffs, const std::vector<BlockEncoding>& bes);

/// Block of the result is block(be1) * block(be2); ancillas kept disjoint.
BlockEncoding product(const BlockEncoding& be1, const BlockEncoding& be2);

/// Phase schedule of the fixed-point search sequence.
struct FpaaSchedule {
  int length = 1;                // L, odd; calls to U and U^dagger
  std::vector<double> alpha;     // source-reflection phases, j = 1..l
  std::vector<double> beta;      // target-reflection phases
  double gamma = 0.0;
  double amplitude = 1.0;        // a = 1 / alpha of the input encoding
  cplx final_amplitude{1.0, 0.0};  // good-subspace amplitude at `amplitude`
};

FpaaSchedule fpaa_schedule(double a, double delta, double eps);

/// Good-subspace amplitude of the sequence for block amplitude a.
cplx fpaa_amplitude(const FpaaSchedule& s, double a);

/// Amplifies an (alpha, m, eps_in)-encoding of a unitary to (1, m+1, eps').
/// delta must lie in (0, 1/alpha]. A global phase removes the sequence's
/// phase at a = 1/alpha. eps' = eps + (2 + L) * eps_in.
BlockEncoding fixed_point_aa(const BlockEncoding& be, double delta, double eps);
/// delta = 0.9 / alpha
BlockEncoding fixed_point_aa(const BlockEncoding& be, double eps);

/// Minimal unitary dilation [[B, sqrt(I-BB+)], [sqrt(I-B+B), -B+]] on one
/// ancilla. Singular values above 1 (roundoff) are clipped.
BlockEncoding dilation(const DenseMatrix& b, double alpha, double eps, int logical_m);

}  // namespace hubsim

#endif  // HUBSIM_BLOCKENC_HPP_
