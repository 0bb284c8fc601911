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

#include <algorithm>
#include <cmath>
#include <vector>

#include "givens_descent.hpp"
#include "monogamy_lab/errors.hpp"
#include "monogamy_lab/measures.hpp"
#include "monogamy_lab/parallel.hpp"

namespace monogamy {
namespace {

constexpr double kRankTolerance = 1e-12;

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

}  // namespace

ConvexRoofResult eof_mixed_numeric(const DensityMatrix& rho, const Bipartition& cut,
                                   const OptimizerConfig& cfg) {
  cfg.validate();
  cut.validate(rho.sites());

  std::vector<std::size_t> order = cut.left;
  order.insert(order.end(), cut.right.begin(), cut.right.end());
  std::vector<std::size_t> inverse(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inverse[order[k]] = k;

  const DimProfile grouped_profile = rho.profile().select(order);
  const ComplexMatrix grouped = linalg::reduce_ordered(rho.matrix(), rho.profile(), order);
  const auto dl = static_cast<Eigen::Index>(rho.profile().select(cut.left).total());
  const auto dr = static_cast<Eigen::Index>(rho.profile().select(cut.right).total());

  const auto eig = linalg::hermitian_eig(grouped);
  Eigen::Index rank = 0;
  while (rank < eig.values.size() && eig.values(rank) > kRankTolerance) ++rank;
  if (rank == 0) throw ContractError("eof_mixed_numeric: state has no support");

  // Columns sqrt(lambda_k) v_k; any decomposition is these mixed by an isometry.
  ComplexMatrix weighted(grouped.rows(), rank);
  for (Eigen::Index k = 0; k < rank; ++k)
    weighted.col(k) = std::sqrt(eig.values(k)) * eig.vectors.col(k);

  const auto cost = [&](const Eigen::Ref<const ComplexVector>& w) {
    const RowMajorMap m(w.data(), dl, dr);
    const ComplexMatrix reduced = dl <= dr ? ComplexMatrix(m * m.adjoint())
                                           : ComplexMatrix(m.adjoint() * m);
    return detail::weighted_entropy(linalg::eigenvalues_unchecked(reduced));
  };

  struct Run {
    ComplexMatrix columns;
    detail::DescentOutcome outcome;
    std::size_t cardinality = 0;
  };
  const std::size_t r = static_cast<std::size_t>(rank);
  const std::size_t span = r * r - r + 1;
  const std::size_t restarts = r == 1 ? 1 : cfg.restarts;
  std::vector<Run> runs(restarts);

  parallel_for(restarts, resolve_threads(cfg.threads), [&](std::size_t k) {
    const auto m = static_cast<Eigen::Index>(r + k % span);
    ComplexMatrix columns;
    if (k == 0) {
      columns = ComplexMatrix::Zero(weighted.rows(), m);
      columns.leftCols(rank) = weighted;
    } else {
      std::mt19937_64 rng(restart_seed(cfg.seed, k));
      const ComplexMatrix isometry = detail::random_isometry(m, rank, rng);
      columns = weighted * isometry.transpose();
    }
    runs[k].outcome = detail::givens_descent(columns, cost, cfg);
    runs[k].columns = std::move(columns);
    runs[k].cardinality = static_cast<std::size_t>(m);
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < restarts; ++k)
    if (runs[k].outcome.value < runs[best].outcome.value) best = k;

  ConvexRoofResult out;
  const Run& winner = runs[best];
  out.best_restart = best;
  out.converged = winner.outcome.converged;
  out.iterations = winner.outcome.sweeps;
  out.cardinality = winner.cardinality;
  for (Eigen::Index c = 0; c < winner.columns.cols(); ++c) {
    const double weight = winner.columns.col(c).squaredNorm();
    if (weight <= 1e-15) continue;
    const ComplexVector local = winner.columns.col(c) / std::sqrt(weight);
    PureState state = PureState::normalized(
        rho.profile(), linalg::permute_vector(local, grouped_profile, inverse));
    out.value += cost(winner.columns.col(c));
    out.decomposition.push_back({weight, std::move(state)});
  }
  return out;
}

}  // namespace monogamy
