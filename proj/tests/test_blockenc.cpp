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
#include "hubsim/blockenc.hpp"
#include "hubsim/sparse_enc.hpp"
#include "oracle_ref.hpp"

using namespace hubsim;

namespace {

DenseMatrix random_unitary(int d, unsigned seed) {
  DenseMatrix m(d, d);
  for (int j = 0; j < d; ++j) m.col(j) = ref::random_state(d, seed * 100 + j);
  Eigen::HouseholderQR<DenseMatrix> qr(m);
  return qr.householderQ() * DenseMatrix::Identity(d, d);
}

BlockEncoding unitary_be(const DenseMatrix& u) {
  const int n = ceil_log2(u.rows());
  auto c = std::make_shared<Circuit>("U", RegisterList{{"sys", n}});
  c->unitary("U", u, {"sys"});
  return make_block_encoding(c, 1.0);
}

// (alpha, 1)-encoding of a with a tagged query so call counts can be read
BlockEncoding scaled_be(const DenseMatrix& a, double alpha) {
  BlockEncoding d = dilation(a / alpha, alpha, 0.0, 1);
  auto c = std::make_shared<Circuit>("tagged", d.unitary->registers());
  c->call(d.unitary, {"dil", "sys"});
  PermFn id = [](std::uint64_t*) {};
  c->permutation("tick", {"dil"}, id, id, {}, {{"U", 1}});
  return make_block_encoding(c, alpha);
}

}  // namespace

TEST_CASE("verify: identity and X") {
  const BlockEncoding id = identity_encoding(1);
  CHECK(verify(id, DenseMatrix::Identity(2, 2)).error == 0.0);
  CHECK(verify(id, DenseMatrix::Identity(2, 2)).passed);
  auto c = std::make_shared<Circuit>("X", RegisterList{{"sys", 1}});
  c->x("sys");
  const Verification v = verify(make_block_encoding(c, 1.0), DenseMatrix::Identity(2, 2));
  CHECK(v.error == doctest::Approx(2.0));
  CHECK_FALSE(v.passed);
  CHECK_THROWS_AS(verify(id, DenseMatrix::Identity(4, 4)), std::invalid_argument);
}

TEST_CASE("make_block_encoding reads m and n") {
  auto c = std::make_shared<Circuit>("c", RegisterList{{"a", 2}, {"b", 1}, {"sys", 3}});
  const BlockEncoding be = make_block_encoding(c, 2.0, 0.1);
  CHECK(be.n == 3);
  CHECK(be.m == 3);
  CHECK(be.circuit_ancillas() == 3);
  auto bad = std::make_shared<Circuit>("c", RegisterList{{"sys", 3}, {"a", 2}});
  CHECK_THROWS(make_block_encoding(bad, 1.0));
}

TEST_CASE("prepare pair") {
  const PreparePair p = make_prepare({cplx(1.0), cplx(-2.0), cplx(0.5)}, 2);
  DenseVector e0 = DenseVector::Zero(4);
  e0(0) = 1.0;
  const DenseVector v0 = p.v * e0;
  CHECK(v0.norm() == doctest::Approx(1.0));
  CHECK(std::norm(v0(1)) == doctest::Approx(2.0 / 3.5));
  CHECK(std::abs(v0(3)) < 1e-15);
  // <0|V'^dagger D V|0> = sum_j w_j d_j / |w|_1
  DenseMatrix dg = DenseMatrix::Zero(4, 4);
  dg.diagonal() << 1.0, 2.0, 3.0, 4.0;
  const cplx got = (p.v_prime * e0).dot(dg * v0);
  CHECK(std::abs(got - cplx((1.0 - 4.0 + 1.5) / 3.5)) < 1e-14);
  const PreparePair q = make_prepare({cplx(1.0), cplx(3.0)}, 1);
  CHECK((q.v - q.v_prime).norm() < 1e-15);
  for (const auto& u : {p.v, p.v_prime, q.v})
    CHECK((u.adjoint() * u - DenseMatrix::Identity(u.rows(), u.cols())).norm() < 1e-13);
}

TEST_CASE("unitary_with_first_column") {
  const DenseVector col = ref::random_state(8, 3);
  const DenseMatrix u = unitary_with_first_column(col);
  CHECK((u.col(0) - col).norm() < 1e-14);
  CHECK((u.adjoint() * u - DenseMatrix::Identity(8, 8)).norm() < 1e-13);
}

TEST_CASE("lcu") {
  const DenseMatrix u1 = random_unitary(4, 1), u2 = random_unitary(4, 2);
  const BlockEncoding a = unitary_be(u1), b = unitary_be(u2);
  SUBCASE("single term") {
    const BlockEncoding one = lcu({1.0}, {a});
    CHECK((one.block() - u1).norm() < 1e-13);
    CHECK(one.alpha == 1.0);
    const BlockEncoding neg = lcu({-2.0}, {a});
    CHECK(neg.alpha == 2.0);
    CHECK((neg.block() + u1).norm() < 1e-13);
  }
  SUBCASE("convex identity") {
    const BlockEncoding i = identity_encoding(2);
    const BlockEncoding s = lcu({0.5, 0.5}, {i, i});
    CHECK(s.alpha == doctest::Approx(1.0));
    CHECK((s.block() - DenseMatrix::Identity(4, 4)).norm() < 1e-13);
    CHECK(s.m == 1);
  }
  SUBCASE("signed sum") {
    const BlockEncoding s = lcu({0.7, -1.3}, {a, b});
    CHECK(s.alpha == doctest::Approx(2.0));
    CHECK(verify(s, 0.7 * u1 - 1.3 * u2).error < 1e-12);
  }
  SUBCASE("scaled terms and error propagation") {
    const DenseMatrix h = random_unitary(4, 5) * 0.4;
    BlockEncoding x = scaled_be(h, 1.5);
    x.eps = 1e-3;
    BlockEncoding y = unitary_be(u1);
    y.eps = 2e-3;
    const BlockEncoding s = lcu({2.0, -1.0, 0.5}, {x, y, identity_encoding(2)});
    CHECK(s.alpha == doctest::Approx(2.0 * 1.5 + 1.0 + 0.5));
    CHECK(s.eps == doctest::Approx(3.5 * 2e-3));
    CHECK(s.m == 2 + 1);
    CHECK(verify(s, 2.0 * h - u1 + 0.5 * DenseMatrix::Identity(4, 4)).error < 1e-12);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(lcu({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(lcu({1.0, 1.0}, {a, identity_encoding(3)}), std::invalid_argument);
  }
}

TEST_CASE("lcu of the dg8 sparse parts") {
  const OracleSet os(dg8());
  const BlockEncoding s = lcu({-1.0, 1.0, 1.0}, {encode_Aminus(os), encode_Ah(os), encode_Ar(os)});
  CHECK(s.alpha == doctest::Approx(8.0));
  const auto p = ref::parts(dg8());
  CHECK(verify(s, -p.a_minus + p.a_h + p.a_r).error < 1e-10);
}

TEST_CASE("product") {
  const DenseMatrix u1 = random_unitary(4, 7), u2 = random_unitary(4, 8), u3 = random_unitary(4, 9);
  SUBCASE("unitaries compose") {
    const BlockEncoding p = product(unitary_be(u1), unitary_be(u2));
    CHECK((p.block() - u1 * u2).norm() < 1e-13);
  }
  SUBCASE("identity factor") {
    const BlockEncoding x = scaled_be(0.3 * u1, 2.0);
    const BlockEncoding p = product(identity_encoding(2, 2), x);
    CHECK((p.block() - x.block()).norm() < 1e-13);
    CHECK(p.m == 2 + 1);
  }
  SUBCASE("A_h squared on dg8") {
    const OracleSet os(dg8());
    const BlockEncoding ah = encode_Ah(os);
    const BlockEncoding p = product(ah, ah);
    const DenseMatrix want = ref::parts(dg8()).a_h;
    CHECK(p.alpha == doctest::Approx(4.0));
    CHECK((p.block() - want * want / 4.0).norm() < 1e-10);
    CHECK(p.m == 2 * ah.m);
  }
  SUBCASE("associative and error rule") {
    BlockEncoding a = scaled_be(0.5 * u1, 1.5), b = scaled_be(0.2 * u2, 2.0),
                  c = scaled_be(u3, 1.0);
    a.eps = 1e-3;
    b.eps = 2e-3;
    const BlockEncoding l = product(product(a, b), c);
    const BlockEncoding r = product(a, product(b, c));
    CHECK((l.block() - r.block()).norm() < 1e-10);
    CHECK(product(a, b).eps == doctest::Approx(1.5 * 2e-3 + 2.0 * 1e-3));
  }
  CHECK_THROWS_AS(product(identity_encoding(1), identity_encoding(2)), std::invalid_argument);
}

TEST_CASE("fixed-point amplification") {
  const DenseMatrix u = random_unitary(4, 11);
  SUBCASE("amplifies a scaled unitary") {
    for (double alpha : {1.0, 2.0, 4.5}) {
      const BlockEncoding be = scaled_be(u, alpha);
      const BlockEncoding amp = fixed_point_aa(be, 1e-6);
      CAPTURE(alpha);
      CHECK(amp.alpha == 1.0);
      CHECK(amp.m == be.m + 1);
      CHECK(verify(amp, u).error <= 1e-6);
      const DenseMatrix blk = amp.block();
      for (unsigned seed = 1; seed < 5; ++seed)
        CHECK((blk * ref::random_state(4, seed)).norm() >= 1.0 - 1e-6);
    }
  }
  SUBCASE("call count is the schedule length") {
    const BlockEncoding be = scaled_be(u, 3.0);
    const BlockEncoding amp = fixed_point_aa(be, 1e-4);
    const FpaaSchedule s = fpaa_schedule(1.0 / 3.0, 0.9 / 3.0, 1e-4);
    CHECK(s.length % 2 == 1);
    CHECK(amp.unitary->query_count().at("U") == s.length);
    CHECK(int(s.alpha.size()) == (s.length - 1) / 2);
  }
  SUBCASE("degree grows like log(1/eps)") {
    const double delta = 0.3;
    const int l2 = fpaa_schedule(0.5, delta, 1e-2).length;
    const int l4 = fpaa_schedule(0.5, delta, 1e-4).length;
    const int l6 = fpaa_schedule(0.5, delta, 1e-6).length;
    CHECK(l2 < l4);
    CHECK(l4 < l6);
    CHECK(std::abs((l6 - l4) - (l4 - l2)) <= 2);
    CHECK(double(l6 - l4) == doctest::Approx(std::log(100.0) / delta).epsilon(0.15));
  }
  SUBCASE("amplitude bound over [delta, 1]") {
    const FpaaSchedule s = fpaa_schedule(0.25, 0.2, 1e-3);
    for (double a = 0.2; a <= 1.0; a += 0.01) CHECK(std::abs(fpaa_amplitude(s, a)) >= 1.0 - 1e-3);
  }
  SUBCASE("error propagation") {
    BlockEncoding be = scaled_be(u, 2.0);
    be.eps = 1e-8;
    const BlockEncoding amp = fixed_point_aa(be, 1e-5);
    const FpaaSchedule s = fpaa_schedule(0.5, 0.45, 1e-5);
    CHECK(amp.eps == doctest::Approx(1e-5 + (2.0 + s.length) * 1e-8));
  }
  SUBCASE("invalid delta") {
    const BlockEncoding be = scaled_be(u, 2.0);
    CHECK_THROWS_AS(fixed_point_aa(be, 0.6, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(fixed_point_aa(be, 0.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(fixed_point_aa(be, 0.3, 0.0), std::invalid_argument);
  }
}

TEST_CASE("dilation") {
  DenseMatrix b = random_unitary(4, 3) * 0.6;
  b(0, 1) += 0.1;
  const double nb = ref::opnorm(b);
  const BlockEncoding d = dilation(b / nb, nb, 0.0, 5);
  CHECK(d.m == 5);
  CHECK(d.dilated);
  CHECK(verify(d, b).error < 1e-12);
  const DenseMatrix w = d.unitary->instructions()[0].matrix;
  CHECK((w.adjoint() * w - DenseMatrix::Identity(8, 8)).norm() < 1e-12);
  CHECK_THROWS_AS(dilation(b * 2.0, 1.0, 0.0, 1), std::invalid_argument);
}

TEST_CASE("ancilla packing") {
  auto c = std::make_shared<Circuit>("c", RegisterList{{"p", 2}, {"q", 1}, {"sys", 2}});
  const auto args = ancilla_args(*c, "bank", 1);
  REQUIRE(args.size() == 3);
  CHECK(args[0].reg == "bank");
  CHECK(args[0].lsb == 2);
  CHECK(args[0].width == 2);
  CHECK(args[1].lsb == 1);
  CHECK(args[2].reg == "sys");
}
