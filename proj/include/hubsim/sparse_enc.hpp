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

#ifndef HUBSIM_SPARSE_ENC_HPP_
#define HUBSIM_SPARSE_ENC_HPP_

#include "hubsim/blockenc.hpp"
#include "hubsim/netgraph.hpp"
#include "hubsim/oracles.hpp"

namespace hubsim {

// Registers: r1..r3 (r4) single qubits, an n-qubit index register and the
// n-qubit system. The Hadamard layer acts on the low bits of the index
// register; its high bits stay |0>.

/// (M, n+3)-encoding of the hub-hub links. M = 0 gives a zero block.
BlockEncoding encode_Ah(const OracleSet& os);
/// (s, n+4)-encoding of the regular-regular links.
BlockEncoding encode_Ar(const OracleSet& os);
/// (h, n+4)-encoding of the missing hub-regular links. Requires each regular
/// node to miss at most h hubs.
BlockEncoding encode_Aminus(const OracleSet& os);
/// lcu([-1, 1, 1], [A-, Ah, Ar]): (h+M+s, n+6)-encoding of A - G.
/// Without hubs this is encode_Ar, with alpha = s.
BlockEncoding encode_H2(const OracleSet& os);

/// Dense A - G.
DenseMatrix dense_H2(const HubSparseGraph& g);

}  // namespace hubsim

#endif  // HUBSIM_SPARSE_ENC_HPP_
