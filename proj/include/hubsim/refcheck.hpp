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

#ifndef HUBSIM_REFCHECK_HPP_
#define HUBSIM_REFCHECK_HPP_

#include "hubsim/netgraph.hpp"

namespace hubsim {

/// exp(-i H t) through a Hermitian eigendecomposition. Dimension <= 4096.
DenseMatrix dense_expm(const DenseMatrix& h, double t);

/// Integrates i d/ds psi~ = e^{iGs} (A - G) e^{-iGs} psi~ from psi0 with an
/// adaptive Runge-Kutta-Fehlberg 7(8) stepper (abs/rel tolerance tol).
/// The rotations come from a dense eigendecomposition of G.
DenseVector rotated_frame_state(const HubSparseGraph& g, double t, const DenseVector& psi0,
                                double tol);

/// rotated_frame_state followed by e^{-iGt}: approximates e^{-iAt} psi0.
DenseVector rotated_reference(const HubSparseGraph& g, double t, const DenseVector& psi0,
                              double tol);

double distance(const DenseVector& a, const DenseVector& b);
/// min over global phase: sqrt(2 - 2 |<a|b>|) for unit vectors
double distance_phase_insensitive(const DenseVector& a, const DenseVector& b);

}  // namespace hubsim

#endif  // HUBSIM_REFCHECK_HPP_
