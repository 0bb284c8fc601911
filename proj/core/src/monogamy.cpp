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

#include "monogamy_lab/monogamy.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "monogamy_lab/errors.hpp"
#include "monogamy_lab/parallel.hpp"

namespace monogamy {
namespace {

constexpr double kPurityTolerance = 1e-10;

Bipartition anchor_cut(std::size_t sites, std::size_t anchor) {
  return Bipartition::of(sites, {anchor});
}

PairReport analyse_pair(const DensityMatrix& rho, std::size_t anchor, std::size_t partner,
                        double epsilon, const OptimizerConfig& cfg) {
  PairReport pr;
  pr.partner = partner;
  const DensityMatrix pair = marginal(rho, {anchor, partner});
  if (pair.profile() == DimProfile{2, 2}) {
    pr.eof = eof_two_qubit(pair);
    pr.method = EofMethod::TwoQubitExact;
  } else {
    const auto roof = eof_mixed_numeric(pair, Bipartition{{0}, {1}}, cfg);
    pr.eof = roof.value;
    pr.method = EofMethod::ConvexRoofNumeric;
    pr.converged = roof.converged;
  }
  pr.ccq = additivity_gap(pair, epsilon);
  return pr;
}

MonogamyReport certify(const DensityMatrix& rho, const std::optional<PureState>& pure,
                       std::size_t anchor, double epsilon, const OptimizerConfig& cfg) {
  if (rho.sites() < 3) throw ContractError("monogamy certification needs at least three sites");
  if (anchor >= rho.sites()) throw ContractError("anchor index out of range");
  if (!(epsilon > 0.0)) throw ContractError("epsilon must be positive");
  cfg.validate();

  MonogamyReport rep;
  rep.anchor = anchor;
  rep.dims = rho.profile().dims();
  rep.epsilon = epsilon;

  const Bipartition cut = anchor_cut(rho.sites(), anchor);
  if (pure) {
    rep.total_eof = eof_pure(*pure, cut);
    rep.total_method = EofMethod::PureExact;
  } else {
    const auto roof = eof_mixed_numeric(rho, cut, cfg);
    rep.total_eof = roof.value;
    rep.total_method = EofMethod::ConvexRoofNumeric;
    rep.total_converged = roof.converged;
  }

  bool any_numeric = rep.total_method == EofMethod::ConvexRoofNumeric;
  rep.all_converged = rep.total_converged;
  rep.condition_holds = true;
  for (std::size_t partner = 0; partner < rho.sites(); ++partner) {
    if (partner == anchor || rho.profile().dim(partner) == 1) continue;
    PairReport pr = analyse_pair(rho, anchor, partner, epsilon, cfg);
    rep.pair_sum += pr.eof;
    any_numeric = any_numeric || pr.method == EofMethod::ConvexRoofNumeric;
    rep.all_converged = rep.all_converged && pr.converged;
    rep.condition_holds = rep.condition_holds && pr.ccq.additive;
    rep.pairs.push_back(std::move(pr));
  }

  rep.monogamy_gap = rep.total_eof - rep.pair_sum;
  rep.delta = any_numeric ? kNumericInequalityTolerance + kConvexRoofTolerance
                          : kExactInequalityTolerance;
  if (rep.monogamy_gap >= -rep.delta) {
    rep.inequality = Verdict::Holds;
  } else {
    rep.inequality = rep.all_converged ? Verdict::Violated : Verdict::Undetermined;
  }
  rep.inequality_holds = rep.inequality == Verdict::Holds;
  rep.consistent = !rep.condition_holds || rep.inequality != Verdict::Violated;
  return rep;
}

}  // namespace

std::string_view to_string(EofMethod method) {
  switch (method) {
    case EofMethod::PureExact: return "pure-exact";
    case EofMethod::TwoQubitExact: return "two-qubit-exact";
    case EofMethod::ConvexRoofNumeric: return "convex-roof-numeric";
  }
  return "unknown";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Undetermined: return "undetermined";
  }
  return "unknown";
}

MonogamyReport certify_tripartite(const PureState& psi, std::size_t anchor, double epsilon,
                                  const OptimizerConfig& cfg) {
  if (psi.profile().sites() != 3) throw ContractError("certify_tripartite: expects three sites");
  return certify(densify(psi), psi, anchor, epsilon, cfg);
}

MonogamyReport certify_multiparty(const DensityMatrix& rho, std::size_t anchor, double epsilon,
                                  const OptimizerConfig& cfg) {
  std::optional<PureState> pure;
  if (rho.purity() >= 1.0 - kPurityTolerance) {
    const auto eig = linalg::hermitian_eig(rho.matrix());
    pure = PureState::normalized(rho.profile(), eig.vectors.col(0));
  }
  return certify(rho, pure, anchor, epsilon, cfg);
}

PureState sample_state(const DimProfile& dims, std::uint64_t seed, std::size_t index) {
  std::mt19937_64 rng(restart_seed(seed, index));
  return random_pure_state(dims, rng);
}

std::vector<SampleRecord> sample_study(const DimProfile& dims, std::size_t count,
                                       std::uint64_t seed, double epsilon,
                                       const OptimizerConfig& cfg) {
  if (dims.sites() < 3) throw ContractError("sample_study: needs at least three sites");
  std::vector<SampleRecord> records(count);
  OptimizerConfig inner = cfg;
  inner.threads = 1;
  parallel_for(count, resolve_threads(cfg.threads), [&](std::size_t i) {
    const PureState psi = sample_state(dims, seed, i);
    const MonogamyReport rep = certify(densify(psi), psi, 0, epsilon, inner);
    SampleRecord& rec = records[i];
    rec.index = i;
    rec.seed = restart_seed(seed, i);
    rec.dims = dims.dims();
    rec.total_eof = rep.total_eof;
    rec.monogamy_gap = rep.monogamy_gap;
    for (const auto& pr : rep.pairs) rec.gaps.push_back(pr.ccq.gap);
    rec.condition_holds = rep.condition_holds;
    rec.inequality_holds = rep.inequality_holds;
    rec.consistent = rep.consistent;
    rec.converged = rep.all_converged;
  });
  return records;
}

}  // namespace monogamy
