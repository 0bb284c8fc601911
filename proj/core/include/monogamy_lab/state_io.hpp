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

// State ingestion: JSON state files and builtin constructors.
//
// State file schema (complex numbers are [re, im] pairs):
//   {"dims": [2, 2, 2], "kind": "pure",  "amplitudes": [[re, im], ...], "label": "..."}
//   {"dims": [2, 2],    "kind": "mixed", "matrix": [[[re, im], ...], ...]}
//
// Builtin specs: "ghz:d,n", "w:n", "product:d1,d2,...".

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "monogamy_lab/states.hpp"

namespace monogamy {

using AnyState = std::variant<PureState, DensityMatrix>;

/// Deviation of norm (pure) or trace (mixed) from 1 accepted without
/// --normalize; such inputs are rescaled exactly.
inline constexpr double kFileNormTolerance = 1e-6;

struct ParseOptions {
  bool normalize = false;
  std::ostream* log = nullptr;  // receives normalisation notes
};

/// (|0..0> + |1..1> + ... + |d-1..d-1>) / sqrt(d) on n sites of dimension d.
PureState ghz_state(std::size_t d, std::size_t n);

/// (|10..0> + |01..0> + ... + |0..01>) / sqrt(n) on n qubits.
PureState w_state(std::size_t n);

/// |0..0> on the given local dimensions.
PureState product_state(std::vector<std::size_t> dims);

bool is_builtin_spec(std::string_view spec);
PureState builtin_state(std::string_view spec);

/// Builtin spec, or else a path to a JSON state file.
AnyState parse_state(std::string_view spec_or_path, const ParseOptions& options = {});

/// Parses state-file text. ParseError messages carry line and column.
AnyState parse_state_json(std::string_view text, const ParseOptions& options = {},
                          std::string_view source = "<inline>");

nlohmann::json state_to_json(const AnyState& state, std::string_view label = {});

DensityMatrix as_density(const AnyState& state);
const DimProfile& profile_of(const AnyState& state);

}  // namespace monogamy
