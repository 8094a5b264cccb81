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

#include <random>

#include "doctest.h"
#include "hubsim/ffhub.hpp"
#include "hubsim/refcheck.hpp"
#include "oracle_ref.hpp"

using namespace hubsim;

TEST_CASE("dense_expm basics") {
  CHECK((dense_expm(DenseMatrix::Zero(4, 4), 3.0) - DenseMatrix::Identity(4, 4)).norm() < 1e-15);
  DenseMatrix z = DenseMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  CHECK((dense_expm(z, M_PI) + DenseMatrix::Identity(2, 2)).norm() < 1e-14);
  DenseMatrix nh = DenseMatrix::Zero(2, 2);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(dense_expm(nh, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(dense_expm(DenseMatrix::Zero(4097, 4097), 1.0), std::invalid_argument);
}

TEST_CASE("dense_expm agrees with Pade and is unitary") {
  const auto g = generate(32, 2, 4, 4, 5);
  const DenseMatrix a = ref::adjacency(g);
  for (double t : {0.1, 1.0, 4.0}) {
    const DenseMatrix u = dense_expm(a, t);
    CHECK((u - ref::expm(a, t)).norm() < 1e-10);
    CHECK((u.adjoint() * u - DenseMatrix::Identity(32, 32)).norm() < 1e-11);
  }
  CHECK((dense_expm(a, 0.4) * dense_expm(a, 1.1) - dense_expm(a, 1.5)).norm() < 1e-10);
}

TEST_CASE("dense_expm on the G eigenvector") {
  const auto g = dg8();
  const GSpectrum s = spectrum_G(g);
  const DenseVector pp = s.psi_plus.cast<cplx>();
  const DenseVector out = dense_expm(ref::g_matrix(g), 0.9) * pp;
  CHECK((out - std::polar(1.0, -s.lambda_plus * 0.9) * pp).norm() < 1e-11);
}

TEST_CASE("rotated reference") {
  const auto g = dg8();
  const DenseVector psi = ref::random_state(8, 2);
  const DenseVector want = ref::expm(ref::adjacency(g), 1.0) * psi;
  const DenseVector got = rotated_reference(g, 1.0, psi, 1e-10);
  CHECK(distance(got, want) <= 1e-9);
  CHECK(got.norm() == doctest::Approx(1.0).epsilon(1e-9));
  // frame state before rotating back
  const DenseVector frame = rotated_frame_state(g, 1.0, psi, 1e-10);
  CHECK(distance(frame, ref::expm(ref::g_matrix(g), -1.0) * want) <= 1e-9);

  const auto g0 = generate(8, 0, 2, 1, 3);
  CHECK(distance(rotated_reference(g0, 2.0, psi, 1e-10), ref::expm(ref::adjacency(g0), 2.0) * psi) <=
        1e-9);
  CHECK(distance(rotated_reference(g, 0.0, psi, 1e-10), psi) < 1e-14);
}

TEST_CASE("distances") {
  const DenseVector a = ref::random_state(6, 1);
  const DenseVector b = ref::random_state(6, 2);
  CHECK(distance(a, a) == 0.0);
  DenseVector e0 = DenseVector::Zero(2), e1 = DenseVector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  CHECK(distance(e0, e1) == doctest::Approx(std::sqrt(2.0)));
  const cplx ph = std::polar(1.0, 0.7);
  CHECK(distance_phase_insensitive(a, ph * a) < 1e-7);
  CHECK(distance(a, ph * a) == doctest::Approx(std::abs(ph - 1.0)));
  CHECK(distance_phase_insensitive(a, b) <= distance(a, b) + 1e-15);
  CHECK_THROWS_AS(distance(a, e0), std::invalid_argument);
}
