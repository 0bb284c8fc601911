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

// Coordinate descent over two-column unitary rotations. Shared by the
// convex-roof and classical-correlation searches: both minimise a sum of
// per-column costs over matrices whose columns may be mixed unitarily.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "monogamy_lab/linalg.hpp"
#include "monogamy_lab/measures.hpp"

namespace monogamy::detail {

struct DescentOutcome {
  double value = 0.0;
  std::size_t sweeps = 0;
  bool converged = false;
};

inline constexpr double kInitialAngleStep = 0.25;

/// Minimises sum_i cost(columns.col(i)) in place. Each sweep visits every
/// column pair and tries the four rotations exp(+-i step G) with G the real
/// or imaginary generator mixing the pair, keeping any that lower the cost.
/// The step halves after a sweep that gains less than the objective
/// tolerance; the run converges when the step falls below the step tolerance.
template <typename Cost>
DescentOutcome givens_descent(ComplexMatrix& columns, const Cost& cost,
                              const OptimizerConfig& cfg) {
  const Eigen::Index m = columns.cols();
  std::vector<double> terms(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) terms[static_cast<std::size_t>(i)] = cost(columns.col(i));

  auto total = [&] {
    double t = 0.0;
    for (double x : terms) t += x;
    return t;
  };

  DescentOutcome out;
  double step = kInitialAngleStep;
  const Complex phases[2] = {Complex(1.0, 0.0), Complex(0.0, 1.0)};
  ComplexVector a_new, b_new;

  for (out.sweeps = 0; out.sweeps < cfg.max_iters;) {
    const double before = total();
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = i + 1; j < m; ++j) {
        auto& ti = terms[static_cast<std::size_t>(i)];
        auto& tj = terms[static_cast<std::size_t>(j)];
        for (const Complex& phase : phases) {
          for (double sign : {1.0, -1.0}) {
            const double c = std::cos(sign * step);
            const double s = std::sin(sign * step);
            a_new = c * columns.col(i) + (phase * s) * columns.col(j);
            b_new = (-std::conj(phase) * s) * columns.col(i) + c * columns.col(j);
            const double fa = cost(a_new);
            const double fb = cost(b_new);
            if (fa + fb < ti + tj - 1e-15) {
              columns.col(i) = a_new;
              columns.col(j) = b_new;
              ti = fa;
              tj = fb;
            }
          }
        }
      }
    }
    ++out.sweeps;
    if (before - total() < cfg.objective_tolerance) {
      step *= 0.5;
      if (step < cfg.step_tolerance) {
        out.converged = true;
        break;
      }
    }
  }
  // A single column (or none) has nothing to rotate.
  if (m < 2) out.converged = true;
  out.value = total();
  return out;
}

/// Haar-distributed m x r isometry (m >= r) from QR of a complex Gaussian.
inline ComplexMatrix random_isometry(Eigen::Index m, Eigen::Index r, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(m, r);
  for (Eigen::Index c = 0; c < r; ++c)
    for (Eigen::Index k = 0; k < m; ++k) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(k, c) = Complex(re, im);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m, r);
  const ComplexMatrix upper = qr.matrixQR();
  for (Eigen::Index c = 0; c < r; ++c) {
    const Complex diag = upper(c, c);
    if (std::abs(diag) > 0.0) q.col(c) *= diag / std::abs(diag);
  }
  return q;
}

/// -sum mu ln mu + p ln p for the spectrum of an unnormalised state of
/// trace p: the weighted entropy p S(rho / p), without dividing by p.
inline double weighted_entropy(const RealVector& mu) {
  double p = 0.0;
  double s = 0.0;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    const double x = mu(k);
    if (x > 0.0) {
      p += x;
      s -= x * std::log(x);
    }
  }
  if (p > 0.0) s += p * std::log(p);
  return std::max(0.0, s);
}

}  // namespace monogamy::detail
