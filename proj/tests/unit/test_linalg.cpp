// Copyright 2026 The monogamy_lab Authors
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

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "monogamy_lab/errors.hpp"
#include "monogamy_lab/linalg.hpp"
#include "test_support.hpp"

using namespace monogamy;
using namespace monogamy::testing;
using linalg::hermitian_eig;
using linalg::kron;
using linalg::matmul;
using linalg::partial_trace;

namespace {

ComplexMatrix ghz3_projector() {
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return projector(v);
}

ComplexMatrix w3_projector() {
  ComplexVector v = ComplexVector::Zero(8);
  v(4) = v(2) = v(1) = 1.0 / std::sqrt(3.0);
  return projector(v);
}

const std::array<std::size_t, 1> kSite0{0};
const std::array<std::size_t, 2> kSites01{0, 1};

}  // namespace

TEST_CASE("DimProfile rejects zero dimensions and computes totals") {
  const DimProfile p{2, 3, 4};
  CHECK(p.total() == 24);
  CHECK(DimProfile().total() == 1);
  CHECK_THROWS_AS(DimProfile({2, 0}), ContractError);
  const std::array<std::size_t, 2> pick{2, 0};
  const DimProfile expected{4, 2};
  CHECK(p.select(pick) == expected);
}

TEST_CASE("matmul") {
  std::mt19937_64 rng(1);
  const ComplexMatrix m = gaussian_matrix(2, 2, rng);
  CHECK(max_abs_diff(matmul(ComplexMatrix::Identity(2, 2), m), m) == 0.0);

  ComplexMatrix x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  CHECK(max_abs_diff(matmul(z, x), -matmul(x, z)) == 0.0);

  const ComplexMatrix a = gaussian_matrix(3, 3, rng);
  const ComplexMatrix b = gaussian_matrix(3, 3, rng);
  Complex expected = 0.0;
  for (int k = 0; k < 3; ++k) expected += a(0, k) * b(k, 0);
  CHECK(std::abs(matmul(a, b)(0, 0) - expected) < 1e-14);

  CHECK_THROWS_AS(matmul(gaussian_matrix(2, 3, rng), gaussian_matrix(2, 3, rng)), ShapeError);
}

TEST_CASE("kron index convention and identities") {
  CHECK(max_abs_diff(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)),
                     ComplexMatrix::Identity(4, 4)) == 0.0);
  CHECK(max_abs_diff(kron(diag({0.5, 0.5}), diag({0.5, 0.5})), diag({0.25, 0.25, 0.25, 0.25})) == 0.0);

  std::mt19937_64 rng(2);
  const ComplexMatrix a = gaussian_matrix(2, 3, rng);
  const ComplexMatrix b = gaussian_matrix(3, 2, rng);
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 6);
  REQUIRE(k.cols() == 6);
  CHECK(k(1 * 3 + 2, 2 * 2 + 1) == a(1, 2) * b(2, 1));

  SUBCASE("tracing out the second factor leaves A tr(B)") {
    const ComplexMatrix sa = gaussian_matrix(2, 2, rng);
    const ComplexMatrix sb = gaussian_matrix(3, 3, rng);
    const ComplexMatrix reduced = partial_trace(kron(sa, sb), DimProfile{2, 3}, kSite0);
    CHECK(max_abs_diff(reduced, sa * sb.trace()) < 1e-13);
  }

  SUBCASE("associativity") {
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix p = gaussian_matrix(2, 2, rng);
      const ComplexMatrix q = gaussian_matrix(3, 2, rng);
      const ComplexMatrix r = gaussian_matrix(2, 3, rng);
      CHECK(max_abs_diff(kron(kron(p, q), r), kron(p, kron(q, r))) <= 1e-12);
    }
  }
}

TEST_CASE("partial trace of GHZ and W") {
  const DimProfile qubits3{2, 2, 2};
  const ComplexMatrix ghz_ab = partial_trace(ghz3_projector(), qubits3, kSites01);
  CHECK(max_abs_diff(ghz_ab, diag({0.5, 0, 0, 0.5})) < 1e-15);

  const ComplexMatrix w_a = partial_trace(w3_projector(), qubits3, kSite0);
  CHECK(max_abs_diff(w_a, diag({2.0 / 3.0, 1.0 / 3.0})) < 1e-15);

  std::mt19937_64 rng(3);
  const ComplexMatrix ra = random_hermitian(2, rng);
  ComplexMatrix rb = random_hermitian(3, rng);
  rb /= rb.trace();
  CHECK(max_abs_diff(partial_trace(kron(ra, rb), DimProfile{2, 3}, kSite0), ra) < 1e-13);
}

TEST_CASE("partial trace keeps sites in original order; reduce_ordered permutes") {
  std::mt19937_64 rng(4);
  const ComplexMatrix a = gaussian_matrix(2, 2, rng);
  const ComplexMatrix b = gaussian_matrix(3, 3, rng);
  const DimProfile p{2, 3};
  const std::array<std::size_t, 2> reversed{1, 0};
  CHECK(max_abs_diff(partial_trace(kron(a, b), p, reversed), kron(a, b)) < 1e-14);
  CHECK(max_abs_diff(linalg::reduce_ordered(kron(a, b), p, reversed), kron(b, a)) < 1e-14);

  ComplexVector va = gaussian_matrix(2, 1, rng);
  ComplexVector vb = gaussian_matrix(3, 1, rng);
  const ComplexVector vab = kron(va, vb);
  CHECK(max_abs_diff(linalg::permute_vector(vab, p, reversed), kron(vb, va)) < 1e-14);
}

TEST_CASE("partial trace preserves trace and composes") {
  std::mt19937_64 rng(5);
  const DimProfile p{2, 3, 2};
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix m = random_hermitian(12, rng);
    const std::array<std::size_t, 2> keep_ab{0, 1};
    const ComplexMatrix ab = partial_trace(m, p, keep_ab);
    CHECK(std::abs(ab.trace() - m.trace()) <= 1e-12);

    const ComplexMatrix a_direct = partial_trace(m, p, kSite0);
    const ComplexMatrix a_stepwise = partial_trace(ab, DimProfile{2, 3}, kSite0);
    CHECK(max_abs_diff(a_direct, a_stepwise) <= 1e-12);
  }
}

TEST_CASE("partial trace errors") {
  const DimProfile p{2, 2};
  const std::array<std::size_t, 1> bad{2};
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(4, 4), p, bad), ContractError);
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(4, 3), p, kSite0), ShapeError);
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(3, 3), p, kSite0), ShapeError);
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(4, 4), p, std::span<const std::size_t>{}),
                  ContractError);
}

TEST_CASE("hermitian_eig on the W marginal and the maximally mixed state") {
  const auto w = hermitian_eig(diag({2.0 / 3.0, 1.0 / 3.0}));
  CHECK(w.values(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(w.values(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(max_abs_diff(w.vectors, ComplexMatrix::Identity(2, 2)) < 1e-15);

  for (Eigen::Index d : {2, 3, 4}) {
    const auto mixed = hermitian_eig(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
    for (Eigen::Index k = 0; k < d; ++k) CHECK(mixed.values(k) == doctest::Approx(1.0 / d));
    CHECK(max_abs_diff(mixed.vectors, ComplexMatrix::Identity(d, d)) < 1e-12);
  }
}

TEST_CASE("hermitian_eig reconstruction, unitarity, ordering, phase, determinism") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix m = random_hermitian(4, rng);
    const auto e = hermitian_eig(m);
    const ComplexMatrix& v = e.vectors;
    CHECK(max_abs_diff(v * e.values.cast<Complex>().asDiagonal() * v.adjoint(), m) <= 1e-10);
    CHECK(max_abs_diff(v.adjoint() * v, ComplexMatrix::Identity(4, 4)) <= 1e-9);
    for (Eigen::Index k = 1; k < 4; ++k) CHECK(e.values(k - 1) >= e.values(k));
    for (Eigen::Index c = 0; c < 4; ++c) {
      Eigen::Index pivot = 0;
      v.col(c).cwiseAbs().maxCoeff(&pivot);
      CHECK(std::abs(v(pivot, c).imag()) < 1e-12);
      CHECK(v(pivot, c).real() > 0.0);
    }
    const auto again = hermitian_eig(m);
    CHECK((again.values.array() == e.values.array()).all());
    CHECK((again.vectors.array() == e.vectors.array()).all());
  }
}

TEST_CASE("degenerate eigenspaces get a basis that depends only on the subspace") {
  std::mt19937_64 rng(7);
  // Same eigenspaces written with two unrelated orthonormal bases.
  const ComplexMatrix u = random_unitary(3, rng);
  ComplexMatrix mixer = ComplexMatrix::Identity(3, 3);
  mixer.topLeftCorner(2, 2) = random_unitary(2, rng);
  const ComplexMatrix u2 = u * mixer;
  const ComplexMatrix spectrum = diag({0.4, 0.4, 0.2});
  const auto a = hermitian_eig(u * spectrum * u.adjoint());
  const auto b = hermitian_eig(u2 * spectrum * u2.adjoint());
  CHECK(max_abs_diff(a.vectors, b.vectors) < 1e-9);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix m = diag({0.5, 0.5});
  m(0, 1) = 1e-6;
  CHECK_THROWS_AS(hermitian_eig(m), ContractError);
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix::Identity(2, 3)), ShapeError);
  m(0, 1) = 1e-12;  // below the 1e-10 gate: accepted and symmetrised
  CHECK_NOTHROW(hermitian_eig(m));
}
