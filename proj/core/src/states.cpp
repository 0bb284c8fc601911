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

#include "monogamy_lab/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "monogamy_lab/errors.hpp"

namespace monogamy {

PureState::PureState(DimProfile profile, ComplexVector amplitudes)
    : profile_(std::move(profile)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != profile_.total()) {
    throw ShapeError("PureState: " + std::to_string(amplitudes_.size()) +
                        " amplitudes for a profile of total dimension " +
                        std::to_string(profile_.total()));
  }
  if (!linalg::all_finite(amplitudes_)) throw ContractError("PureState: non-finite amplitude");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw ContractError("PureState: norm " + std::to_string(norm) +
                        " deviates from 1 by more than 1e-8");
  }
}

PureState PureState::normalized(DimProfile profile, ComplexVector amplitudes,
                                 double* norm_before) {
  const double norm = amplitudes.norm();
  if (norm_before != nullptr) *norm_before = norm;
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ContractError("PureState: cannot normalise a zero or non-finite vector");
  }
  return PureState(std::move(profile), amplitudes / norm);
}

DensityMatrix::DensityMatrix(DimProfile profile, ComplexMatrix matrix)
    : profile_(std::move(profile)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols())
    throw ShapeError("DensityMatrix: matrix is not square");
  if (static_cast<std::size_t>(matrix_.rows()) != profile_.total()) {
    throw ShapeError("DensityMatrix: side " + std::to_string(matrix_.rows()) +
                     " does not match profile total " + std::to_string(profile_.total()));
  }
  if (!linalg::all_finite(matrix_)) throw ContractError("DensityMatrix: non-finite entry");
  const double defect = linalg::hermiticity_defect(matrix_);
  if (defect > linalg::kHermitianTolerance) {
    throw ContractError("DensityMatrix: not Hermitian (defect " + std::to_string(defect) + ")");
  }
  matrix_ = (matrix_ + matrix_.adjoint()).eval() * 0.5;
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw ContractError("DensityMatrix: trace " + std::to_string(trace) +
                        " deviates from 1 by more than 1e-10");
  }
  const RealVector spectrum = linalg::hermitian_eigenvalues(matrix_);
  if (spectrum.size() > 0 && spectrum.minCoeff() < -kPsdTolerance) {
    throw ContractError("DensityMatrix: eigenvalue " + std::to_string(spectrum.minCoeff()) +
                        " below -1e-10");
  }
}

DensityMatrix DensityMatrix::from_numeric(DimProfile profile, ComplexMatrix matrix) {
  if (static_cast<std::size_t>(matrix.rows()) != profile.total() ||
      matrix.rows() != matrix.cols()) {
    throw ShapeError("DensityMatrix::from_numeric: shape does not match profile");
  }
  const auto eig = linalg::hermitian_eig(matrix);
  RealVector clipped = eig.values.cwiseMax(0.0);
  const double trace = clipped.sum();
  if (!(trace > 0.0)) throw ContractError("DensityMatrix::from_numeric: zero trace");
  clipped /= trace;
  ComplexMatrix rebuilt = eig.vectors * clipped.cast<Complex>().asDiagonal() *
                          eig.vectors.adjoint();
  rebuilt = (rebuilt + rebuilt.adjoint()).eval() * 0.5;
  return DensityMatrix(Trusted{}, std::move(profile), std::move(rebuilt));
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return matrix_.cwiseAbs2().sum();
}

Bipartition Bipartition::of(std::size_t sites, std::vector<std::size_t> left) {
  Bipartition cut;
  std::sort(left.begin(), left.end());
  for (std::size_t s = 0; s < sites; ++s)
    if (!std::binary_search(left.begin(), left.end(), s)) cut.right.push_back(s);
  cut.left = std::move(left);
  cut.validate(sites);
  return cut;
}

void Bipartition::validate(std::size_t sites) const {
  if (left.empty() || right.empty()) throw ContractError("bipartition: both groups must be nonempty");
  std::vector<int> seen(sites, 0);
  for (const auto* group : {&left, &right}) {
    for (std::size_t s : *group) {
      if (s >= sites) throw ContractError("bipartition: site " + std::to_string(s) + " out of range");
      if (seen[s]++ != 0) throw ContractError("bipartition: site " + std::to_string(s) + " listed twice");
    }
  }
  for (std::size_t s = 0; s < sites; ++s)
    if (seen[s] == 0) throw ContractError("bipartition: site " + std::to_string(s) + " not assigned");
}

DensityMatrix densify(const PureState& psi) {
  const ComplexVector& v = psi.amplitudes();
  return DensityMatrix(psi.profile(), v * v.adjoint());
}

DensityMatrix marginal(const DensityMatrix& rho, std::span<const std::size_t> sites) {
  return DensityMatrix(rho.profile().select(sites),
                       linalg::reduce_ordered(rho.matrix(), rho.profile(), sites));
}

DensityMatrix marginal(const DensityMatrix& rho, std::initializer_list<std::size_t> sites) {
  return marginal(rho, std::span<const std::size_t>(sites.begin(), sites.size()));
}

double shannon_entropy(std::span<const double> p) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= -1e-12)) throw ContractError("shannon_entropy: negative probability");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-8) {
    throw ContractError("shannon_entropy: probabilities sum to " + std::to_string(total));
  }
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = eigenvalues(i);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return std::max(0.0, entropy_of_spectrum(linalg::hermitian_eigenvalues(rho.matrix())));
}

double mutual_information(const DensityMatrix& rho, const Bipartition& cut) {
  cut.validate(rho.sites());
  return von_neumann_entropy(marginal(rho, cut.left)) +
         von_neumann_entropy(marginal(rho, cut.right)) - von_neumann_entropy(rho);
}

DensityMatrix embed_to_qudit(const DensityMatrix& rho) {
  if (rho.sites() != 2) throw ContractError("embed_to_qudit: expects a two-site state");
  const std::size_t da = rho.profile().dim(0);
  const std::size_t db = rho.profile().dim(1);
  const std::size_t d = std::max(da, db);
  if (da == d && db == d) return rho;

  const auto side = static_cast<Eigen::Index>(d * d);
  ComplexMatrix out = ComplexMatrix::Zero(side, side);
  auto lift = [&](std::size_t flat) {
    return static_cast<Eigen::Index>((flat / db) * d + flat % db);
  };
  for (std::size_t r = 0; r < da * db; ++r)
    for (std::size_t c = 0; c < da * db; ++c)
      out(lift(r), lift(c)) = rho.matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  return DensityMatrix(DimProfile{d, d}, std::move(out));
}

PureState random_pure_state(const DimProfile& profile, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(static_cast<Eigen::Index>(profile.total()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  return PureState::normalized(profile, std::move(v));
}

DensityMatrix random_mixed_state(const DimProfile& profile, std::size_t environment,
                                 std::mt19937_64& rng) {
  std::vector<std::size_t> dims = profile.dims();
  dims.push_back(environment);
  const PureState psi = random_pure_state(DimProfile(dims), rng);
  std::vector<std::size_t> keep(profile.sites());
  for (std::size_t s = 0; s < keep.size(); ++s) keep[s] = s;
  return marginal(densify(psi), keep);
}

}  // namespace monogamy
