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

// Dense complex linear algebra for small Hermitian problems.
//
// Matrices are Eigen dense types. Everything here is a pure function of its
// arguments; results are bit-reproducible for identical inputs.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace monogamy {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Ordered list of local dimensions labelling a tensor-product space.
class DimProfile {
 public:
  DimProfile() = default;
  explicit DimProfile(std::vector<std::size_t> dims);
  DimProfile(std::initializer_list<std::size_t> dims)
      : DimProfile(std::vector<std::size_t>(dims)) {}

  std::size_t sites() const { return dims_.size(); }
  std::size_t dim(std::size_t site) const { return dims_.at(site); }
  std::size_t total() const { return total_; }
  const std::vector<std::size_t>& dims() const { return dims_; }

  /// Profile of the listed sites, in the order given.
  DimProfile select(std::span<const std::size_t> sites) const;

  bool operator==(const DimProfile&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

namespace linalg {

inline constexpr double kHermitianTolerance = 1e-10;

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; entry (ia*rows_b + ib, ja*cols_b + jb) = a(ia,ja) b(ib,jb).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& m);

/// max |m - m^dagger| entrywise; +inf for non-square input.
double hermiticity_defect(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// Traces out every site not in `keep`. The result lives on the kept sites in
/// their original order, regardless of the order of `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimProfile& profile,
                            std::span<const std::size_t> keep);

/// Like partial_trace but the output tensor factors follow the order of
/// `sites`. With every site listed this is a pure subsystem permutation.
ComplexMatrix reduce_ordered(const ComplexMatrix& m, const DimProfile& profile,
                             std::span<const std::size_t> sites);

/// Same permutation/marginalisation applied to a state vector's index space:
/// reorders the tensor factors of `v` so that `order` (a permutation of all
/// sites) becomes the new factor order.
ComplexVector permute_vector(const ComplexVector& v, const DimProfile& profile,
                             std::span<const std::size_t> order);

struct EigenSystem {
  RealVector values;      // descending
  ComplexMatrix vectors;  // column k belongs to values[k]
};

/// Eigendecomposition of a Hermitian matrix (checked to 1e-10, then
/// symmetrised). Eigenvalues are sorted descending. Inside a degenerate
/// cluster (spread <= 1e-10) the basis is the Gram-Schmidt image of the
/// standard basis under the cluster projector, so it does not depend on the
/// solver's internal choice. Every eigenvector is rephased so that its
/// largest-magnitude component (lowest index on ties) is real and >= 0.
EigenSystem hermitian_eig(const ComplexMatrix& m);

/// Eigenvalues only, descending. Same Hermiticity gate as hermitian_eig.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Unchecked fast path for callers that constructed `m` Hermitian
/// themselves (optimizer inner loops). Ascending order.
RealVector eigenvalues_unchecked(const ComplexMatrix& m);

}  // namespace linalg
}  // namespace monogamy
