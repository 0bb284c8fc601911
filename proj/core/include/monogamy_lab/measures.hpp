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

#pragma once

// Entanglement and correlation functionals.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monogamy_lab/ccq.hpp"
#include "monogamy_lab/linalg.hpp"
#include "monogamy_lab/states.hpp"

namespace monogamy {

/// Rank-1 projective measurement on one site.
struct Measurement {
  std::vector<ComplexMatrix> elements;

  /// Projectors onto the columns of `basis`.
  static Measurement from_basis(const ComplexMatrix& basis);

  /// Completeness and rank-1 projector checks at 1e-9.
  void validate() const;
};

/// Ensemble of the unmeasured site of a two-site state induced by measuring
/// `measured` (0 or 1).
Ensemble induced_ensemble(const DensityMatrix& rho_ab, std::size_t measured,
                          const Measurement& measurement);

/// chi = S(sum p rho) - sum p S(rho), placeholders skipped.
double holevo(const Ensemble& ensemble);

/// Entropy of the reduced state on cut.left.
double eof_pure(const PureState& psi, const Bipartition& cut);

/// Binary entropy in nats.
double binary_entropy(double x);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

/// Closed-form two-qubit entanglement of formation, nats.
double eof_two_qubit(const DensityMatrix& rho);

struct OptimizerConfig {
  std::size_t restarts = 20;
  std::size_t max_iters = 500;  // sweeps per restart
  double step_tolerance = 1e-10;
  double objective_tolerance = 1e-9;
  std::uint64_t seed = 0x6d6f6e6f67616d79ULL;
  std::size_t threads = 0;  // 0: MONOGAMY_LAB_THREADS or hardware default

  void validate() const;
};

/// Seed of restart `restart`; depends only on (seed, restart).
std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart);

struct DecompositionTerm {
  double weight;
  PureState state;
};

struct ConvexRoofResult {
  double value = 0.0;
  std::vector<DecompositionTerm> decomposition;
  bool converged = false;
  std::size_t iterations = 0;   // sweeps used by the winning restart
  std::size_t cardinality = 0;  // decomposition length searched by the winning restart
  std::size_t best_restart = 0;
};

/// Convex-roof entanglement of formation across `cut`, by local search over
/// pure-state decompositions. Always an upper bound on the true value.
///
/// Decompositions of length m are W = V U^T where V holds the
/// sqrt(eigenvalue)-weighted eigenvectors of rho and U is an m x rank
/// isometry. Restart k searches length m = rank + (k mod (rank^2 - rank + 1)),
/// so the restart sequence sweeps rank..rank^2. Restart 0 starts from the
/// eigendecomposition; the rest from Haar-random isometries. Each restart runs
/// coordinate descent over two-column Givens rotations with a shrinking angle
/// step and is converged once the step drops below cfg.step_tolerance.
ConvexRoofResult eof_mixed_numeric(const DensityMatrix& rho, const Bipartition& cut,
                                   const OptimizerConfig& cfg = {});

struct ClassicalCorrelationResult {
  double value = 0.0;
  ComplexMatrix basis;  // optimal measurement vectors, as columns
  double chi_eigen = 0.0;
  double chi_fourier = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  std::size_t best_restart = 0;
};

/// One-way classical correlation with `measured` (0 or 1) as the measured
/// site, maximised over rank-1 projective measurements. Start 0 is the
/// eigenbasis of the measured marginal and start 1 its Fourier basis, so the
/// result never falls below either Holevo quantity.
ClassicalCorrelationResult cc_one_way(const DensityMatrix& rho_ab, std::size_t measured,
                                      const OptimizerConfig& cfg = {});

struct KoashiWinterResult {
  double residual = 0.0;
  double entropy = 0.0;                 // S(rho_anchor)
  double classical_correlation = 0.0;   // J(rho_anchor,via), via measured
  double eof = 0.0;                     // E_f(rho_anchor,rest)
  bool eof_exact = false;
  bool converged = false;
};

/// S(rho_anchor) - J(rho_anchor,via) - E_f(rho_anchor,rest) for a three-site
/// pure state.
KoashiWinterResult koashi_winter_residual(const PureState& psi, std::size_t anchor,
                                          std::size_t via, const OptimizerConfig& cfg = {});

}  // namespace monogamy
