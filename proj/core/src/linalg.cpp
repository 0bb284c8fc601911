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

#include "monogamy_lab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "monogamy_lab/errors.hpp"

namespace monogamy {

DimProfile::DimProfile(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  for (std::size_t d : dims_) {
    if (d < 1) throw ContractError("DimProfile: every local dimension must be >= 1");
    total_ *= d;
  }
}

DimProfile DimProfile::select(std::span<const std::size_t> sites) const {
  std::vector<std::size_t> out;
  out.reserve(sites.size());
  for (std::size_t s : sites) {
    if (s >= dims_.size()) throw ContractError("DimProfile: site index out of range");
    out.push_back(dims_[s]);
  }
  return DimProfile(std::move(out));
}

namespace linalg {
namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw ShapeError(std::string(what) + ": matrix is not square (" +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
  }
}

// Flat offsets of every multi-index over `sites` (first listed = most
// significant digit) inside the full row-major index space of `profile`.
std::vector<std::size_t> site_offsets(const DimProfile& profile,
                                      std::span<const std::size_t> sites) {
  const std::size_t n = profile.sites();
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t k = n; k-- > 1;) stride[k - 1] = stride[k] * profile.dim(k);

  std::vector<std::size_t> offsets{0};
  for (std::size_t s : sites) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * profile.dim(s));
    for (std::size_t base : offsets)
      for (std::size_t digit = 0; digit < profile.dim(s); ++digit)
        next.push_back(base + digit * stride[s]);
    offsets = std::move(next);
  }
  return offsets;
}

void validate_sites(const DimProfile& profile, std::span<const std::size_t> sites) {
  if (sites.empty()) throw ContractError("partial trace: kept site set is empty");
  std::vector<bool> seen(profile.sites(), false);
  for (std::size_t s : sites) {
    if (s >= profile.sites())
      throw ContractError("partial trace: site index " + std::to_string(s) + " out of range");
    if (seen[s]) throw ContractError("partial trace: duplicate site index " + std::to_string(s));
    seen[s] = true;
  }
}

std::vector<std::size_t> complement(const DimProfile& profile,
                                    std::span<const std::size_t> sites) {
  std::vector<bool> kept(profile.sites(), false);
  for (std::size_t s : sites) kept[s] = true;
  std::vector<std::size_t> rest;
  for (std::size_t s = 0; s < profile.sites(); ++s)
    if (!kept[s]) rest.push_back(s);
  return rest;
}

}  // namespace

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: inner dimensions differ (" + std::to_string(a.cols()) +
                     " vs " + std::to_string(b.rows()) + ")");
  }
  return a * b;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const Complex z = m.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix reduce_ordered(const ComplexMatrix& m, const DimProfile& profile,
                             std::span<const std::size_t> sites) {
  require_square(m, "partial trace");
  if (static_cast<std::size_t>(m.rows()) != profile.total()) {
    throw ShapeError("partial trace: matrix side " + std::to_string(m.rows()) +
                     " does not match profile total " + std::to_string(profile.total()));
  }
  validate_sites(profile, sites);
  const std::vector<std::size_t> traced = complement(profile, sites);
  const auto kept_off = site_offsets(profile, sites);
  const auto traced_off = site_offsets(profile, traced);

  const auto k = static_cast<Eigen::Index>(kept_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(k, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index r = 0; r < k; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t t : traced_off)
        acc += m(static_cast<Eigen::Index>(kept_off[r] + t),
                 static_cast<Eigen::Index>(kept_off[c] + t));
      out(r, c) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimProfile& profile,
                            std::span<const std::size_t> keep) {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  return reduce_ordered(m, profile, sorted);
}

ComplexVector permute_vector(const ComplexVector& v, const DimProfile& profile,
                             std::span<const std::size_t> order) {
  if (static_cast<std::size_t>(v.size()) != profile.total())
    throw ShapeError("permute_vector: vector length does not match profile");
  validate_sites(profile, order);
  if (order.size() != profile.sites())
    throw ContractError("permute_vector: order must list every site exactly once");
  const auto offsets = site_offsets(profile, order);
  ComplexVector out(v.size());
  for (std::size_t k = 0; k < offsets.size(); ++k)
    out(static_cast<Eigen::Index>(k)) = v(static_cast<Eigen::Index>(offsets[k]));
  return out;
}

namespace {

constexpr double kClusterTolerance = 1e-10;

ComplexMatrix checked_symmetrised(const ComplexMatrix& m) {
  require_square(m, "hermitian_eig");
  if (!all_finite(m)) throw ContractError("hermitian_eig: non-finite entry");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTolerance) {
    throw ContractError("hermitian_eig: matrix is not Hermitian (max |m - m^dagger| = " +
                        std::to_string(defect) + ")");
  }
  return (m + m.adjoint()) * 0.5;
}

void canonical_phase(Eigen::Ref<ComplexVector> v) {
  double best = -1.0;
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > best + 1e-12) {
      best = mag;
      pivot = i;
    }
  }
  if (best > 0.0) v *= std::conj(v(pivot)) / best;
}

// Column-pivoted Gram-Schmidt of the standard basis pushed through the
// projector onto span(block). Output columns ordered by pivot index.
ComplexMatrix canonical_cluster_basis(const ComplexMatrix& block) {
  const Eigen::Index n = block.rows();
  const Eigen::Index k = block.cols();
  const ComplexMatrix projector = block * block.adjoint();

  std::vector<std::pair<Eigen::Index, ComplexVector>> chosen;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index step = 0; step < k; ++step) {
    Eigen::Index pivot = -1;
    double best = -1.0;
    ComplexVector best_vec;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      ComplexVector u = projector.col(i);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& [idx, q] : chosen) u -= q * q.dot(u);
      const double norm = u.norm();
      if (norm > best + 1e-12) {
        best = norm;
        pivot = i;
        best_vec = std::move(u);
      }
    }
    used[static_cast<std::size_t>(pivot)] = true;
    chosen.emplace_back(pivot, best_vec / best);
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  ComplexMatrix out(n, k);
  for (Eigen::Index c = 0; c < k; ++c) out.col(c) = chosen[static_cast<std::size_t>(c)].second;
  return out;
}

}  // namespace

EigenSystem hermitian_eig(const ComplexMatrix& m) {
  const ComplexMatrix h = checked_symmetrised(m);
  const Eigen::Index n = h.rows();
  EigenSystem out;
  if (n == 0) return out;

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw ContractError("hermitian_eig: solver failed");
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();

  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && out.values(end - 1) - out.values(end) <= kClusterTolerance) ++end;
    const Eigen::Index len = end - start;
    if (len > 1) {
      out.vectors.middleCols(start, len) =
          canonical_cluster_basis(out.vectors.middleCols(start, len));
    }
    start = end;
  }
  for (Eigen::Index c = 0; c < n; ++c) canonical_phase(out.vectors.col(c));
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  const ComplexMatrix h = checked_symmetrised(m);
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

RealVector eigenvalues_unchecked(const ComplexMatrix& m) {
  if (m.rows() == 2) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double off = std::norm(m(0, 1));
    const double mean = 0.5 * (a + d);
    const double half = std::sqrt(0.25 * (a - d) * (a - d) + off);
    RealVector v(2);
    v << mean - half, mean + half;
    return v;
  }
  if (m.rows() == 1) return RealVector::Constant(1, m(0, 0).real());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace linalg
}  // namespace monogamy
