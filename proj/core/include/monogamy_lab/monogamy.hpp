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

// Certification of the entanglement-of-formation monogamy inequality
//   E_f(anchor | rest) >= sum_i E_f(anchor, partner_i)
// together with the ccq mutual-information additivity condition that is
// sufficient for it.
//
// The condition is evaluated on the two-party marginals rho_{anchor,i}
// exactly as given, including for mixed global states. For mixed states the
// sufficiency argument goes through the pure members of an optimal
// decomposition, whose marginals need not share the additivity of the
// averaged marginal, so `consistent == false` on a mixed input would point
// at that gap rather than at a numerical bug.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "monogamy_lab/ccq.hpp"
#include "monogamy_lab/measures.hpp"
#include "monogamy_lab/states.hpp"

namespace monogamy {

enum class EofMethod { PureExact, TwoQubitExact, ConvexRoofNumeric };
std::string_view to_string(EofMethod method);

enum class Verdict { Holds, Violated, Undetermined };
std::string_view to_string(Verdict verdict);

inline constexpr double kExactInequalityTolerance = 1e-9;
inline constexpr double kNumericInequalityTolerance = 1e-6;
/// Slack granted to convex-roof estimates, which only bound E_f from above.
inline constexpr double kConvexRoofTolerance = 1e-3;

struct PairReport {
  std::size_t partner = 0;
  double eof = 0.0;
  EofMethod method = EofMethod::TwoQubitExact;
  bool converged = true;
  CcqAnalysis ccq;
};

struct MonogamyReport {
  std::size_t anchor = 0;
  std::vector<std::size_t> dims;
  double epsilon = kDefaultAdditivityTolerance;
  double total_eof = 0.0;
  EofMethod total_method = EofMethod::PureExact;
  bool total_converged = true;
  std::vector<PairReport> pairs;  // partners of local dimension 1 are skipped
  double pair_sum = 0.0;
  double monogamy_gap = 0.0;      // total_eof - pair_sum
  double delta = kExactInequalityTolerance;
  bool condition_holds = false;   // every pair additive at epsilon
  Verdict inequality = Verdict::Undetermined;
  bool inequality_holds = false;  // inequality == Holds
  bool consistent = true;         // !condition_holds || inequality != Violated
  bool all_converged = true;
};

/// Three-site pure state.
MonogamyReport certify_tripartite(const PureState& psi, std::size_t anchor,
                                  double epsilon = kDefaultAdditivityTolerance,
                                  const OptimizerConfig& cfg = {});

/// Any state on three or more sites. A state with purity >= 1 - 1e-10 is
/// treated as pure (anchor entanglement by entropy); otherwise the anchor's
/// entanglement with the rest is a convex-roof estimate.
MonogamyReport certify_multiparty(const DensityMatrix& rho, std::size_t anchor,
                                  double epsilon = kDefaultAdditivityTolerance,
                                  const OptimizerConfig& cfg = {});

struct SampleRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> dims;
  double total_eof = 0.0;
  double monogamy_gap = 0.0;
  std::vector<double> gaps;  // additivity gap per anchor pair
  bool condition_holds = false;
  bool inequality_holds = false;
  bool consistent = true;
  bool converged = true;
};

/// Certifies `count` Haar-random pure states on `dims` with anchor 0. Record
/// i depends only on (seed, i, dims, epsilon, cfg); samples run in parallel.
std::vector<SampleRecord> sample_study(const DimProfile& dims, std::size_t count,
                                       std::uint64_t seed,
                                       double epsilon = kDefaultAdditivityTolerance,
                                       const OptimizerConfig& cfg = {});

/// The pure state behind record `index` of sample_study(dims, ..., seed).
PureState sample_state(const DimProfile& dims, std::uint64_t seed, std::size_t index);

}  // namespace monogamy
