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

// Physical states over a DimProfile and the entropy functionals on them.
// All entropies are in nats.

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "monogamy_lab/linalg.hpp"

namespace monogamy {

inline constexpr double kNormTolerance = 1e-8;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

class PureState {
 public:
  /// Throws ContractError unless |amplitudes| = 1 within 1e-8.
  PureState(DimProfile profile, ComplexVector amplitudes);

  /// Rescales to unit norm. `norm_before` receives the original norm so the
  /// caller can report the correction.
  static PureState normalized(DimProfile profile, ComplexVector amplitudes,
                              double* norm_before = nullptr);

  const DimProfile& profile() const { return profile_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  DimProfile profile_;
  ComplexVector amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-10), unit trace (1e-10) and eigenvalues
  /// >= -1e-10, then stores the symmetrised matrix.
  DensityMatrix(DimProfile profile, ComplexMatrix matrix);

  /// Nearest physical state for numerically derived operators: symmetrise,
  /// clip negative eigenvalues to zero, rescale to unit trace. Input must
  /// still be Hermitian to 1e-10 and have positive trace.
  static DensityMatrix from_numeric(DimProfile profile, ComplexMatrix matrix);

  const DimProfile& profile() const { return profile_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t sites() const { return profile_.sites(); }
  Eigen::Index side() const { return matrix_.rows(); }

  double purity() const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, DimProfile profile, ComplexMatrix matrix)
      : profile_(std::move(profile)), matrix_(std::move(matrix)) {}

  DimProfile profile_;
  ComplexMatrix matrix_;
};

/// Split of a profile's sites into two nonempty groups.
struct Bipartition {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;

  /// `left` versus every other site.
  static Bipartition of(std::size_t sites, std::vector<std::size_t> left);

  /// Throws ContractError unless the two groups are nonempty, disjoint and
  /// together cover all `sites` sites.
  void validate(std::size_t sites) const;
};

DensityMatrix densify(const PureState& psi);

/// Reduced state on `sites`, tensor factors in the order listed.
DensityMatrix marginal(const DensityMatrix& rho, std::span<const std::size_t> sites);
DensityMatrix marginal(const DensityMatrix& rho, std::initializer_list<std::size_t> sites);

/// -sum p ln p. Entries must be >= -1e-12 and sum to 1 within 1e-8.
double shannon_entropy(std::span<const double> p);

/// -sum l ln l over the eigenvalues, with l in [-1e-10, 0] treated as zero.
double von_neumann_entropy(const DensityMatrix& rho);

/// Same functional on a raw spectrum (no validation; negatives clipped).
double entropy_of_spectrum(const RealVector& eigenvalues);

/// S(left) + S(right) - S(rho).
double mutual_information(const DensityMatrix& rho, const Bipartition& cut);

/// Zero-pads both sites of a two-site state up to d = max(d_0, d_1).
DensityMatrix embed_to_qudit(const DensityMatrix& rho);

/// Haar-random pure state: normalised vector of i.i.d. complex Gaussians.
PureState random_pure_state(const DimProfile& profile, std::mt19937_64& rng);

/// Haar-induced mixed state: marginal of a random pure state on
/// profile (x) C^environment.
DensityMatrix random_mixed_state(const DimProfile& profile, std::size_t environment,
                                 std::mt19937_64& rng);

}  // namespace monogamy
