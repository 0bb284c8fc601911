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

// Classical-classical-quantum construction on a two-qudit state rho_AB.
//
// Site B (the second site) is measured; ensembles live on site A. Inputs to
// the ensemble/ccq builders must already have equal local dimensions (see
// embed_to_qudit); additivity_gap embeds on its own.

#include <cstddef>
#include <vector>

#include "monogamy_lab/linalg.hpp"
#include "monogamy_lab/states.hpp"

namespace monogamy {

/// Outcomes with probability at or below this are kept as flagged
/// placeholders and skipped in Holevo averages.
inline constexpr double kZeroProbability = 1e-12;

/// Default |gap| threshold for calling a ccq state additive, in nats.
inline constexpr double kDefaultAdditivityTolerance = 1e-7;

struct EnsembleMember {
  double probability;
  DensityMatrix state;
  bool placeholder = false;
};

/// Probability-weighted conditional states of one site.
struct Ensemble {
  std::vector<EnsembleMember> members;

  /// sum_x p_x rho_x over non-placeholder members.
  ComplexMatrix average() const;

  /// Throws ContractError if probabilities are negative or do not sum to 1
  /// within 1e-8, or (when given) the average differs from `reference` by
  /// more than `tolerance` entrywise.
  void validate(const ComplexMatrix* reference = nullptr, double tolerance = 1e-10) const;
};

/// Clock/shift pair built on the eigenbasis {e_j} of a single-site state.
struct PauliPair {
  std::size_t d = 0;
  Complex omega;            // exp(2 pi i / d)
  RealVector spectrum;      // eigenvalues of rho_B, descending
  ComplexMatrix basis;      // column j = e_j
  ComplexMatrix fourier;    // column j = (1/sqrt d) sum_k omega^{jk} e_k
  ComplexMatrix Z;          // sum_j omega^j |e_j><e_j|
  ComplexMatrix X;          // sum_j |e_{j+1}><e_j|

  /// X^x Z^y, exponents taken mod d.
  ComplexMatrix shift_clock(std::size_t x, std::size_t y) const;
};

struct MutualInfos {
  double xy_ab = 0.0;  // I(XY:AB)
  double x_ab = 0.0;   // I(X:AB)
  double y_ab = 0.0;   // I(Y:AB)
};

struct CcqAnalysis {
  std::size_t d = 0;
  std::vector<double> spectrum;                 // of rho_B, descending
  std::vector<std::size_t> degeneracy;          // multiplicities of spectrum clusters
  double chi0 = 0.0;                            // Holevo quantity of the eigenbasis ensemble
  double chi1 = 0.0;                            // Holevo quantity of the Fourier ensemble
  double mutual_information_ab = 0.0;           // I(rho_AB)
  MutualInfos closed;
  MutualInfos direct;
  double gap = 0.0;                             // closed.xy_ab - closed.x_ab - closed.y_ab
  double epsilon = kDefaultAdditivityTolerance;
  bool additive = false;                        // |gap| <= epsilon
  double closed_direct_residual = 0.0;          // max |closed - direct|
  double holevo_identity_residual = 0.0;        // (I(rho_AB) - chi0 - chi1) - gap

  bool degenerate() const;
};

/// Measures B in the eigenbasis of rho_B: probabilities are the spectrum.
Ensemble eigen_ensemble(const DensityMatrix& rho_ab);

/// Measures B in the Fourier basis of that eigenbasis. Every probability is
/// 1/d; a deviation beyond 1e-8 raises ConsistencyError.
Ensemble fourier_ensemble(const DensityMatrix& rho_ab);

PauliPair build_pauli_pair(const DensityMatrix& rho_b);

/// Four-site state on X, Y, A, B (each of dimension d):
///   (1/d^2) sum_{x,y} |x><x| (x) |y><y| (x) (I (x) X^x Z^y) rho (I (x) Z^-y X^-x)
DensityMatrix build_ccq(const DensityMatrix& rho_ab);

/// I(XY:AB) = ln d + S(A) - S(AB), I(X:AB) = ln d - S(B) + chi0,
/// I(Y:AB) = chi1.
MutualInfos mutual_infos_closed(const DensityMatrix& rho_ab);

/// Same three quantities from entropies of the ccq state and its marginals.
MutualInfos mutual_infos_direct(const DensityMatrix& gamma);

/// Full analysis of any two-site state (embedded to equal dimensions first).
CcqAnalysis additivity_gap(const DensityMatrix& rho_ab,
                           double epsilon = kDefaultAdditivityTolerance);

}  // namespace monogamy
