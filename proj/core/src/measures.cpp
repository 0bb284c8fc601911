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

#include "monogamy_lab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "givens_descent.hpp"
#include "monogamy_lab/errors.hpp"
#include "monogamy_lab/parallel.hpp"

namespace monogamy {
namespace {

// Puts the measured site second.
DensityMatrix measured_last(const DensityMatrix& rho_ab, std::size_t measured) {
  if (rho_ab.sites() != 2) throw ContractError("expects a two-site state");
  if (measured > 1) throw ContractError("measured site must be 0 or 1");
  if (measured == 1) return rho_ab;
  return marginal(rho_ab, {1, 0});
}

}  // namespace

Measurement Measurement::from_basis(const ComplexMatrix& basis) {
  Measurement m;
  m.elements.reserve(static_cast<std::size_t>(basis.cols()));
  for (Eigen::Index c = 0; c < basis.cols(); ++c)
    m.elements.push_back(basis.col(c) * basis.col(c).adjoint());
  return m;
}

void Measurement::validate() const {
  if (elements.empty()) throw ContractError("Measurement: no elements");
  const Eigen::Index n = elements.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& e : elements) {
    if (e.rows() != n || e.cols() != n) throw ShapeError("Measurement: element shape mismatch");
    if (linalg::hermiticity_defect(e) > 1e-9)
      throw ContractError("Measurement: element is not Hermitian");
    if ((e * e - e).cwiseAbs().maxCoeff() > 1e-9)
      throw ContractError("Measurement: element is not idempotent");
    if (std::abs(e.trace().real() - 1.0) > 1e-9)
      throw ContractError("Measurement: element is not rank one");
    sum += e;
  }
  if ((sum - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
    throw ContractError("Measurement: elements do not sum to the identity");
}

Ensemble induced_ensemble(const DensityMatrix& rho_ab, std::size_t measured,
                          const Measurement& measurement) {
  measurement.validate();
  const DensityMatrix rho = measured_last(rho_ab, measured);
  const std::size_t du = rho.profile().dim(0);
  const std::size_t dm = rho.profile().dim(1);
  if (static_cast<std::size_t>(measurement.elements.front().rows()) != dm)
    throw ShapeError("induced_ensemble: measurement acts on the wrong dimension");

  const auto nu = static_cast<Eigen::Index>(du);
  const ComplexMatrix identity = ComplexMatrix::Identity(nu, nu);
  const std::size_t keep[] = {0};
  Ensemble e;
  for (const auto& element : measurement.elements) {
    const ComplexMatrix op = linalg::kron(identity, element);
    ComplexMatrix partial = linalg::partial_trace(op * rho.matrix() * op, rho.profile(), keep);
    partial = (partial + partial.adjoint()).eval() * 0.5;
    const double p = partial.trace().real();
    if (p <= kZeroProbability) {
      e.members.push_back({std::max(p, 0.0),
                           DensityMatrix(DimProfile{du}, identity / static_cast<double>(du)),
                           true});
    } else {
      e.members.push_back({p, DensityMatrix::from_numeric(DimProfile{du}, partial / p), false});
    }
  }
  return e;
}

double holevo(const Ensemble& ensemble) {
  if (ensemble.members.empty()) return 0.0;
  ensemble.validate();
  const DimProfile& profile = ensemble.members.front().state.profile();
  const double s_avg = von_neumann_entropy(DensityMatrix::from_numeric(profile, ensemble.average()));
  double s_members = 0.0;
  for (const auto& m : ensemble.members)
    if (!m.placeholder) s_members += m.probability * von_neumann_entropy(m.state);
  return std::max(0.0, s_avg - s_members);
}

double eof_pure(const PureState& psi, const Bipartition& cut) {
  cut.validate(psi.profile().sites());
  std::vector<std::size_t> order = cut.left;
  order.insert(order.end(), cut.right.begin(), cut.right.end());
  const ComplexVector v = linalg::permute_vector(psi.amplitudes(), psi.profile(), order);
  const auto dl = static_cast<Eigen::Index>(psi.profile().select(cut.left).total());
  const auto dr = static_cast<Eigen::Index>(psi.profile().select(cut.right).total());
  // Row-major reshape: v(l * dr + r) -> m(l, r).
  const ComplexMatrix m = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                                         Eigen::RowMajor>>(v.data(), dl, dr);
  const ComplexMatrix reduced = dl <= dr ? ComplexMatrix(m * m.adjoint())
                                         : ComplexMatrix(m.adjoint() * m);
  return std::max(0.0, entropy_of_spectrum(linalg::hermitian_eigenvalues(reduced)));
}

double binary_entropy(double x) {
  auto term = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
  return term(x) + term(1.0 - x);
}

double concurrence(const DensityMatrix& rho) {
  if (rho.sites() != 2 || rho.profile().dim(0) != 2 || rho.profile().dim(1) != 2)
    throw ShapeError("concurrence: expects a two-qubit state");
  ComplexMatrix sy(2, 2);
  sy << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  const ComplexMatrix yy = linalg::kron(sy, sy);

  // With rho = W W^dagger, the square roots of the eigenvalues of
  // rho (yy rho* yy) are the singular values of W^T yy W. Taking them this way
  // avoids square roots of rounding noise on rank-deficient states.
  const auto eig = linalg::hermitian_eig(rho.matrix());
  const RealVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix w = eig.vectors * root.cast<Complex>().asDiagonal();
  const ComplexMatrix tau = w.transpose() * yy * w;
  const RealVector mu = Eigen::JacobiSVD<ComplexMatrix>(tau).singularValues();
  return std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
}

double eof_two_qubit(const DensityMatrix& rho) {
  const double c = std::min(1.0, concurrence(rho));
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

void OptimizerConfig::validate() const {
  if (restarts < 1) throw ContractError("OptimizerConfig: restarts must be >= 1");
  if (max_iters < 1) throw ContractError("OptimizerConfig: max_iters must be >= 1");
  if (!(step_tolerance > 0.0) || !(objective_tolerance > 0.0))
    throw ContractError("OptimizerConfig: tolerances must be positive");
}

std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart) {
  // splitmix64 finaliser over a Weyl-sequence step
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (restart + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ClassicalCorrelationResult cc_one_way(const DensityMatrix& rho_ab, std::size_t measured,
                                      const OptimizerConfig& cfg) {
  cfg.validate();
  const DensityMatrix rho = measured_last(rho_ab, measured);
  const auto du = static_cast<Eigen::Index>(rho.profile().dim(0));
  const auto dm = static_cast<Eigen::Index>(rho.profile().dim(1));
  const double s_u = von_neumann_entropy(marginal(rho, {0}));

  // blocks[b * dm + b'](a, a') = rho(a dm + b, a' dm + b')
  std::vector<ComplexMatrix> blocks(static_cast<std::size_t>(dm * dm), ComplexMatrix(du, du));
  for (Eigen::Index b = 0; b < dm; ++b)
    for (Eigen::Index bp = 0; bp < dm; ++bp)
      for (Eigen::Index a = 0; a < du; ++a)
        for (Eigen::Index ap = 0; ap < du; ++ap)
          blocks[static_cast<std::size_t>(b * dm + bp)](a, ap) = rho.matrix()(a * dm + b, ap * dm + bp);

  // p S(sigma_v / p) for the unnormalised conditional state of outcome v.
  const auto cost = [&](const Eigen::Ref<const ComplexVector>& v) {
    ComplexMatrix sigma = ComplexMatrix::Zero(du, du);
    for (Eigen::Index b = 0; b < dm; ++b)
      for (Eigen::Index bp = 0; bp < dm; ++bp)
        sigma += (std::conj(v(b)) * v(bp)) * blocks[static_cast<std::size_t>(b * dm + bp)];
    return detail::weighted_entropy(linalg::eigenvalues_unchecked(sigma));
  };
  const auto total_cost = [&](const ComplexMatrix& basis) {
    double t = 0.0;
    for (Eigen::Index c = 0; c < basis.cols(); ++c) t += cost(basis.col(c));
    return t;
  };

  const PauliPair pp = build_pauli_pair(marginal(rho, {1}));
  const std::size_t starts = std::max<std::size_t>(cfg.restarts, 2);

  struct Run {
    ComplexMatrix basis;
    detail::DescentOutcome outcome;
  };
  std::vector<Run> runs(starts);
  parallel_for(starts, resolve_threads(cfg.threads), [&](std::size_t k) {
    ComplexMatrix basis;
    if (k == 0) {
      basis = pp.basis;
    } else if (k == 1) {
      basis = pp.fourier;
    } else {
      std::mt19937_64 rng(restart_seed(cfg.seed, k));
      basis = detail::random_isometry(dm, dm, rng);
    }
    runs[k].outcome = detail::givens_descent(basis, cost, cfg);
    runs[k].basis = std::move(basis);
  });

  ClassicalCorrelationResult out;
  out.chi_eigen = std::max(0.0, s_u - total_cost(pp.basis));
  out.chi_fourier = std::max(0.0, s_u - total_cost(pp.fourier));
  std::size_t best = 0;
  for (std::size_t k = 1; k < starts; ++k)
    if (runs[k].outcome.value < runs[best].outcome.value) best = k;
  out.value = std::max(0.0, s_u - runs[best].outcome.value);
  out.basis = runs[best].basis;
  out.converged = runs[best].outcome.converged;
  out.iterations = runs[best].outcome.sweeps;
  out.best_restart = best;
  return out;
}

KoashiWinterResult koashi_winter_residual(const PureState& psi, std::size_t anchor,
                                          std::size_t via, const OptimizerConfig& cfg) {
  if (psi.profile().sites() != 3) throw ContractError("koashi_winter_residual: expects three sites");
  if (anchor > 2 || via > 2 || anchor == via)
    throw ContractError("koashi_winter_residual: anchor and via must be distinct sites");
  const std::size_t rest = 3 - anchor - via;
  const DensityMatrix rho = densify(psi);

  KoashiWinterResult out;
  out.entropy = von_neumann_entropy(marginal(rho, {anchor}));
  const auto cc = cc_one_way(marginal(rho, {anchor, via}), 1, cfg);
  out.classical_correlation = cc.value;

  const DensityMatrix pair = marginal(rho, {anchor, rest});
  bool eof_converged = true;
  if (pair.profile() == DimProfile{2, 2}) {
    out.eof = eof_two_qubit(pair);
    out.eof_exact = true;
  } else {
    const auto roof = eof_mixed_numeric(pair, Bipartition{{0}, {1}}, cfg);
    out.eof = roof.value;
    eof_converged = roof.converged;
  }
  out.residual = out.entropy - out.classical_correlation - out.eof;
  out.converged = cc.converged && eof_converged;
  return out;
}

}  // namespace monogamy
