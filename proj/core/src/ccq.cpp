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

#include "monogamy_lab/ccq.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "monogamy_lab/errors.hpp"
#include "monogamy_lab/measures.hpp"

namespace monogamy {
namespace {

std::size_t require_two_qudit(const DensityMatrix& rho, const char* what) {
  if (rho.sites() != 2 || rho.profile().dim(0) != rho.profile().dim(1)) {
    throw ContractError(std::string(what) +
                        ": expects a two-site state with equal local dimensions");
  }
  return rho.profile().dim(0);
}

Complex root_of_unity(std::size_t d, std::size_t power) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(power % d) /
                             static_cast<double>(d));
}

DensityMatrix site_b(const DensityMatrix& rho_ab) { return marginal(rho_ab, {1}); }

}  // namespace

ComplexMatrix Ensemble::average() const {
  if (members.empty()) return {};
  ComplexMatrix avg = ComplexMatrix::Zero(members.front().state.side(), members.front().state.side());
  for (const auto& m : members)
    if (!m.placeholder) avg += m.probability * m.state.matrix();
  return avg;
}

void Ensemble::validate(const ComplexMatrix* reference, double tolerance) const {
  double total = 0.0;
  for (const auto& m : members) {
    if (m.probability < -1e-12) throw ContractError("Ensemble: negative probability");
    total += m.probability;
  }
  if (std::abs(total - 1.0) > 1e-8) {
    throw ContractError("Ensemble: probabilities sum to " + std::to_string(total));
  }
  if (reference != nullptr) {
    const ComplexMatrix avg = average();
    if (avg.rows() != reference->rows() || (avg - *reference).cwiseAbs().maxCoeff() > tolerance) {
      throw ContractError("Ensemble: average does not reproduce the reference state");
    }
  }
}

bool CcqAnalysis::degenerate() const {
  return std::any_of(degeneracy.begin(), degeneracy.end(),
                     [](std::size_t m) { return m > 1; });
}

ComplexMatrix PauliPair::shift_clock(std::size_t x, std::size_t y) const {
  // In the eigenbasis: X^x Z^y |e_j> = omega^{jy} |e_{j+x}>.
  ComplexMatrix local = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j) {
    local(static_cast<Eigen::Index>((j + x) % d), static_cast<Eigen::Index>(j)) =
        root_of_unity(d, j * (y % d));
  }
  return basis * local * basis.adjoint();
}

PauliPair build_pauli_pair(const DensityMatrix& rho_b) {
  if (rho_b.sites() != 1) throw ContractError("build_pauli_pair: expects a single-site state");
  const auto eig = linalg::hermitian_eig(rho_b.matrix());
  PauliPair pp;
  pp.d = rho_b.profile().dim(0);
  const auto n = static_cast<Eigen::Index>(pp.d);
  pp.omega = root_of_unity(pp.d, 1);
  pp.spectrum = eig.values;
  pp.basis = eig.vectors;

  ComplexMatrix dft(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j)
      dft(k, j) = root_of_unity(pp.d, static_cast<std::size_t>(j * k)) /
                  std::sqrt(static_cast<double>(pp.d));
  pp.fourier = pp.basis * dft;
  pp.Z = pp.shift_clock(0, 1);
  pp.X = pp.shift_clock(1, 0);
  return pp;
}

Ensemble eigen_ensemble(const DensityMatrix& rho_ab) {
  require_two_qudit(rho_ab, "eigen_ensemble");
  const PauliPair pp = build_pauli_pair(site_b(rho_ab));
  return induced_ensemble(rho_ab, 1, Measurement::from_basis(pp.basis));
}

Ensemble fourier_ensemble(const DensityMatrix& rho_ab) {
  const std::size_t d = require_two_qudit(rho_ab, "fourier_ensemble");
  const PauliPair pp = build_pauli_pair(site_b(rho_ab));
  Ensemble e = induced_ensemble(rho_ab, 1, Measurement::from_basis(pp.fourier));
  const double uniform = 1.0 / static_cast<double>(d);
  for (auto& m : e.members) {
    if (std::abs(m.probability - uniform) > 1e-8) {
      throw ConsistencyError("fourier_ensemble: outcome probability " +
                             std::to_string(m.probability) + " differs from 1/d");
    }
    m.probability = uniform;
    m.placeholder = false;
  }
  return e;
}

DensityMatrix build_ccq(const DensityMatrix& rho_ab) {
  const std::size_t d = require_two_qudit(rho_ab, "build_ccq");
  const PauliPair pp = build_pauli_pair(site_b(rho_ab));
  const auto n = static_cast<Eigen::Index>(d);
  const Eigen::Index block = n * n;
  const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
  const double weight = 1.0 / static_cast<double>(d * d);

  ComplexMatrix gamma = ComplexMatrix::Zero(block * block, block * block);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      const ComplexMatrix u = linalg::kron(identity, pp.shift_clock(x, y));
      const Eigen::Index offset = static_cast<Eigen::Index>(x * d + y) * block;
      gamma.block(offset, offset, block, block) = weight * (u * rho_ab.matrix() * u.adjoint());
    }
  }
  return DensityMatrix(DimProfile{d, d, d, d}, std::move(gamma));
}

MutualInfos mutual_infos_closed(const DensityMatrix& rho_ab) {
  const std::size_t d = require_two_qudit(rho_ab, "mutual_infos_closed");
  const double ln_d = std::log(static_cast<double>(d));
  const double s_a = von_neumann_entropy(marginal(rho_ab, {0}));
  const double s_b = von_neumann_entropy(marginal(rho_ab, {1}));
  const double s_ab = von_neumann_entropy(rho_ab);
  MutualInfos out;
  out.xy_ab = ln_d + s_a - s_ab;
  out.x_ab = ln_d - s_b + holevo(eigen_ensemble(rho_ab));
  out.y_ab = holevo(fourier_ensemble(rho_ab));
  return out;
}

MutualInfos mutual_infos_direct(const DensityMatrix& gamma) {
  if (gamma.sites() != 4) throw ContractError("mutual_infos_direct: expects a four-site ccq state");
  auto s = [&](std::initializer_list<std::size_t> sites) {
    return von_neumann_entropy(marginal(gamma, sites));
  };
  const double s_xyab = von_neumann_entropy(gamma);
  const double s_ab = s({2, 3});
  MutualInfos out;
  out.xy_ab = s({0, 1}) + s_ab - s_xyab;
  out.x_ab = s({0}) + s_ab - s({0, 2, 3});
  out.y_ab = s({1}) + s_ab - s({1, 2, 3});
  return out;
}

CcqAnalysis additivity_gap(const DensityMatrix& rho_ab, double epsilon) {
  if (!(epsilon > 0.0)) throw ContractError("additivity_gap: epsilon must be positive");
  const DensityMatrix rho = embed_to_qudit(rho_ab);
  const std::size_t d = rho.profile().dim(0);
  const double ln_d = std::log(static_cast<double>(d));

  CcqAnalysis a;
  a.d = d;
  a.epsilon = epsilon;

  const DensityMatrix rho_a = marginal(rho, {0});
  const DensityMatrix rho_b = marginal(rho, {1});
  const PauliPair pp = build_pauli_pair(rho_b);
  a.spectrum.assign(pp.spectrum.data(), pp.spectrum.data() + pp.spectrum.size());
  for (std::size_t i = 0; i < a.spectrum.size();) {
    std::size_t j = i + 1;
    while (j < a.spectrum.size() && a.spectrum[j - 1] - a.spectrum[j] <= 1e-10) ++j;
    a.degeneracy.push_back(j - i);
    i = j;
  }

  const double s_a = von_neumann_entropy(rho_a);
  const double s_b = von_neumann_entropy(rho_b);
  const double s_ab = von_neumann_entropy(rho);
  a.chi0 = holevo(eigen_ensemble(rho));
  a.chi1 = holevo(fourier_ensemble(rho));
  a.mutual_information_ab = s_a + s_b - s_ab;

  a.closed.xy_ab = ln_d + s_a - s_ab;
  a.closed.x_ab = ln_d - s_b + a.chi0;
  a.closed.y_ab = a.chi1;
  a.direct = mutual_infos_direct(build_ccq(rho));

  a.gap = a.closed.xy_ab - a.closed.x_ab - a.closed.y_ab;
  a.additive = std::abs(a.gap) <= epsilon;
  a.closed_direct_residual = std::max({std::abs(a.closed.xy_ab - a.direct.xy_ab),
                                       std::abs(a.closed.x_ab - a.direct.x_ab),
                                       std::abs(a.closed.y_ab - a.direct.y_ab)});
  a.holevo_identity_residual = (a.mutual_information_ab - a.chi0 - a.chi1) - a.gap;
  return a;
}

}  // namespace monogamy
