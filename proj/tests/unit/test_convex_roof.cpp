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

#include <cmath>
#include <random>

#include "monogamy_lab/errors.hpp"
#include "monogamy_lab/measures.hpp"
#include "monogamy_lab/state_io.hpp"
#include "test_support.hpp"

using namespace monogamy;
using namespace monogamy::testing;

namespace {

OptimizerConfig cfg_with(std::size_t restarts, std::size_t threads = 1) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.threads = threads;
  return cfg;
}

ComplexMatrix reassemble(const ConvexRoofResult& r) {
  const auto n = r.decomposition.front().state.amplitudes().size();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (const auto& t : r.decomposition) m += t.weight * projector(t.state.amplitudes());
  return m;
}

double recompute(const ConvexRoofResult& r, const Bipartition& cut) {
  double total = 0.0;
  for (const auto& t : r.decomposition) total += t.weight * eof_pure(t.state, cut);
  return total;
}

DensityMatrix pad_to_qutrits(const DensityMatrix& rho) {
  ComplexMatrix m = ComplexMatrix::Zero(9, 9);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m((i / 2) * 3 + i % 2, (j / 2) * 3 + j % 2) = rho.matrix()(i, j);
  return DensityMatrix(DimProfile{3, 3}, m);
}

}  // namespace

TEST_CASE("pure input reduces to the entanglement entropy") {
  std::mt19937_64 rng(41);
  const auto psi = random_pure_state(DimProfile{2, 3}, rng);
  const auto cut = Bipartition::of(2, {0});
  const auto r = eof_mixed_numeric(densify(psi), cut, cfg_with(5));
  CHECK(r.value == doctest::Approx(eof_pure(psi, cut)).epsilon(1e-10));
  CHECK(r.cardinality == 1);
  CHECK(r.decomposition.size() == 1);
  CHECK(r.converged);
}

TEST_CASE("W pair matches the closed form within the search tolerance") {
  const auto rho = marginal(densify(w_state(3)), {0, 1});
  const auto r = eof_mixed_numeric(rho, Bipartition::of(2, {0}), cfg_with(8));
  const double exact = eof_two_qubit(rho);
  CHECK(r.value >= exact - 1e-9);
  CHECK(r.value <= exact + 1e-3);
  CHECK(r.converged);
}

TEST_CASE("diagonal states are separable") {
  const DensityMatrix rho(DimProfile{2, 3}, diag({0.1, 0.2, 0.05, 0.3, 0.15, 0.2}));
  const auto r = eof_mixed_numeric(rho, Bipartition::of(2, {0}), cfg_with(4));
  CHECK(std::abs(r.value) <= 1e-10);
}

TEST_CASE("decomposition reproduces the state and the value") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 6; ++trial) {
    const DimProfile dims = trial % 2 ? DimProfile{2, 2} : DimProfile{2, 3};
    const auto rho = random_mixed_state(dims, 2 + trial % 3, rng);
    const auto cut = Bipartition::of(2, {0});
    const auto r = eof_mixed_numeric(rho, cut, cfg_with(4));
    REQUIRE_FALSE(r.decomposition.empty());
    CHECK(r.decomposition.size() == r.cardinality);
    double weights = 0.0;
    for (const auto& t : r.decomposition) weights += t.weight;
    CHECK(weights == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(max_abs_diff(reassemble(r), rho.matrix()) <= 1e-8);
    CHECK(std::abs(recompute(r, cut) - r.value) <= 1e-10);
  }
}

TEST_CASE("non-contiguous cuts report states in the original site order") {
  std::mt19937_64 rng(43);
  const auto rho = random_mixed_state(DimProfile{2, 2, 2}, 2, rng);
  const Bipartition cut{{0, 2}, {1}};
  const auto r = eof_mixed_numeric(rho, cut, cfg_with(3));
  CHECK((r.decomposition.front().state.profile() == DimProfile{2, 2, 2}));
  CHECK(max_abs_diff(reassemble(r), rho.matrix()) <= 1e-8);
  CHECK(std::abs(recompute(r, cut) - r.value) <= 1e-10);
}

TEST_CASE("numeric EoF brackets the two-qubit closed form") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 12; ++trial) {
    const auto rho = random_mixed_state(DimProfile{2, 2}, 1 + trial % 4, rng);
    const double exact = eof_two_qubit(rho);
    const auto r = eof_mixed_numeric(rho, Bipartition::of(2, {0}), cfg_with(10));
    CHECK(r.value >= exact - 1e-9);
    CHECK(r.value <= exact + 1e-3);
  }
}

TEST_CASE("zero-padded qubits give the same EoF") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 3; ++trial) {
    const auto rho = random_mixed_state(DimProfile{2, 2}, 2, rng);
    const double exact = eof_two_qubit(rho);
    const auto r = eof_mixed_numeric(pad_to_qutrits(rho), Bipartition::of(2, {0}), cfg_with(10));
    CHECK(r.value >= exact - 1e-9);
    CHECK(r.value <= exact + 1e-3);
  }
}

TEST_CASE("more restarts never make the estimate worse") {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 4; ++trial) {
    const auto rho = random_mixed_state(DimProfile{2, 3}, 3, rng);
    const auto cut = Bipartition::of(2, {0});
    const auto few = eof_mixed_numeric(rho, cut, cfg_with(2));
    const auto many = eof_mixed_numeric(rho, cut, cfg_with(6));
    CHECK(many.value <= few.value + 1e-12);
  }
}

TEST_CASE("results are deterministic and independent of thread count") {
  std::mt19937_64 rng(47);
  const auto rho = random_mixed_state(DimProfile{2, 2}, 3, rng);
  const auto cut = Bipartition::of(2, {0});
  const auto a = eof_mixed_numeric(rho, cut, cfg_with(6, 1));
  const auto b = eof_mixed_numeric(rho, cut, cfg_with(6, 1));
  const auto c = eof_mixed_numeric(rho, cut, cfg_with(6, 4));
  CHECK(a.value == b.value);
  CHECK(a.value == c.value);
  CHECK(a.best_restart == c.best_restart);
  CHECK(a.cardinality == c.cardinality);

  auto reseeded = cfg_with(6, 1);
  reseeded.seed = 12345;
  const auto d = eof_mixed_numeric(rho, cut, reseeded);
  CHECK(std::abs(d.value - a.value) <= 1e-3);
}

TEST_CASE("invalid configuration and cuts are rejected") {
  const auto rho = marginal(densify(w_state(3)), {0, 1});
  auto bad = cfg_with(0);
  CHECK_THROWS_AS(eof_mixed_numeric(rho, Bipartition::of(2, {0}), bad), ContractError);
  CHECK_THROWS_AS(eof_mixed_numeric(rho, Bipartition{{0}, {0}}, cfg_with(1)), ContractError);
}
