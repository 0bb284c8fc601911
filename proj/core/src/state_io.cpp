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

#include "monogamy_lab/state_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "monogamy_lab/errors.hpp"

namespace monogamy {
namespace {

using nlohmann::json;

std::vector<std::size_t> parse_size_list(std::string_view text, std::string_view spec) {
  std::vector<std::size_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || ptr != item.data() + item.size() || item.empty()) {
      throw ParseError("builtin state '" + std::string(spec) + "': '" + std::string(item) +
                       "' is not a non-negative integer");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Complex parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(where + ": expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

void note(const ParseOptions& options, const std::string& message) {
  if (options.log != nullptr) *options.log << "monogamy_lab: " << message << '\n';
}

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

constexpr double kExactUnitTolerance = 1e-12;

}  // namespace

PureState ghz_state(std::size_t d, std::size_t n) {
  if (d < 1 || n < 1) throw ParseError("ghz: dimension and site count must be >= 1");
  DimProfile profile(std::vector<std::size_t>(n, d));
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(profile.total()));
  // index of |k k ... k> = k * (d^{n-1} + ... + d + 1)
  std::size_t repunit = 0;
  for (std::size_t s = 0; s < n; ++s) repunit = repunit * d + 1;
  for (std::size_t k = 0; k < d; ++k)
    v(static_cast<Eigen::Index>(k * repunit)) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(std::move(profile), std::move(v));
}

PureState w_state(std::size_t n) {
  if (n < 1) throw ParseError("w: site count must be >= 1");
  DimProfile profile(std::vector<std::size_t>(n, 2));
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(profile.total()));
  for (std::size_t s = 0; s < n; ++s)
    v(static_cast<Eigen::Index>(std::size_t{1} << (n - 1 - s))) = 1.0 / std::sqrt(static_cast<double>(n));
  return PureState(std::move(profile), std::move(v));
}

PureState product_state(std::vector<std::size_t> dims) {
  DimProfile profile(std::move(dims));
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(profile.total()));
  v(0) = 1.0;
  return PureState(std::move(profile), std::move(v));
}

bool is_builtin_spec(std::string_view spec) {
  return spec.starts_with("ghz:") || spec.starts_with("w:") || spec.starts_with("product:");
}

PureState builtin_state(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ParseError("not a builtin state spec: " + std::string(spec));
  const std::string_view kind = spec.substr(0, colon);
  const auto args = parse_size_list(spec.substr(colon + 1), spec);
  if (kind == "ghz") {
    if (args.size() != 2) throw ParseError("ghz expects 'ghz:d,n'");
    return ghz_state(args[0], args[1]);
  }
  if (kind == "w") {
    if (args.size() != 1) throw ParseError("w expects 'w:n'");
    return w_state(args[0]);
  }
  if (kind == "product") {
    if (args.empty()) throw ParseError("product expects 'product:d1,d2,...'");
    for (std::size_t d : args)
      if (d < 1) throw ParseError("product: local dimensions must be >= 1");
    return product_state(args);
  }
  throw ParseError("unknown builtin state kind '" + std::string(kind) + "'");
}

AnyState parse_state_json(std::string_view text, const ParseOptions& options,
                          std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" +
                     std::to_string(column) + ": malformed JSON (" + e.what() + ")");
  }
  const std::string where(source);
  if (!doc.is_object()) throw ParseError(where + ": top level must be an object");

  if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].empty())
    throw ParseError(where + ": 'dims' must be a nonempty array of integers");
  std::vector<std::size_t> dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() < 1)
      throw ParseError(where + ": every entry of 'dims' must be an integer >= 1");
    dims.push_back(d.get<std::size_t>());
  }
  DimProfile profile(dims);
  const auto n = static_cast<Eigen::Index>(profile.total());

  const std::string kind = doc.value("kind", std::string{});
  if (kind == "pure") {
    if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array())
      throw ParseError(where + ": pure state needs an 'amplitudes' array");
    const auto& amps = doc["amplitudes"];
    if (static_cast<Eigen::Index>(amps.size()) != n) {
      throw ContractError(where + ": " + std::to_string(amps.size()) +
                          " amplitudes, expected product of dims = " + std::to_string(n));
    }
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
      v(i) = parse_complex(amps[static_cast<std::size_t>(i)], where + ": amplitudes[" + std::to_string(i) + "]");
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > kFileNormTolerance && !options.normalize) {
      throw ContractError(where + ": norm " + format_number(norm) +
                          " deviates from 1 by more than 1e-6 (pass --normalize to rescale)");
    }
    if (options.normalize && std::abs(norm - 1.0) > kNormTolerance) {
      note(options, where + ": normalised pure state (norm was " + format_number(norm) +
                        ", scaled by " + format_number(1.0 / norm) + ")");
    }
    // Already-normalised input is kept bit-for-bit so files round-trip.
    if (std::abs(norm - 1.0) <= kExactUnitTolerance) return PureState(std::move(profile), std::move(v));
    return PureState::normalized(std::move(profile), std::move(v));
  }
  if (kind == "mixed") {
    if (!doc.contains("matrix") || !doc["matrix"].is_array())
      throw ParseError(where + ": mixed state needs a 'matrix' array of rows");
    const auto& rows = doc["matrix"];
    if (static_cast<Eigen::Index>(rows.size()) != n)
      throw ContractError(where + ": matrix has " + std::to_string(rows.size()) +
                          " rows, expected " + std::to_string(n));
    ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
        throw ContractError(where + ": matrix row " + std::to_string(r) + " must have " +
                            std::to_string(n) + " entries");
      for (Eigen::Index c = 0; c < n; ++c)
        m(r, c) = parse_complex(row[static_cast<std::size_t>(c)],
                                where + ": matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    const double trace = m.trace().real();
    if (std::abs(trace - 1.0) > kFileNormTolerance && !options.normalize) {
      throw ContractError(where + ": trace " + format_number(trace) +
                          " deviates from 1 by more than 1e-6 (pass --normalize to rescale)");
    }
    if (options.normalize && std::abs(trace - 1.0) > kTraceTolerance) {
      note(options, where + ": normalised mixed state (trace was " + format_number(trace) +
                        ", scaled by " + format_number(1.0 / trace) + ")");
    }
    if (!(trace > 0.0)) throw ContractError(where + ": trace must be positive");
    if (std::abs(trace - 1.0) <= kExactUnitTolerance) return DensityMatrix(std::move(profile), m);
    return DensityMatrix(std::move(profile), m / trace);
  }
  throw ParseError(where + ": 'kind' must be \"pure\" or \"mixed\"");
}

AnyState parse_state(std::string_view spec_or_path, const ParseOptions& options) {
  if (is_builtin_spec(spec_or_path)) return builtin_state(spec_or_path);
  const std::string path(spec_or_path);
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state_json(buffer.str(), options, path);
}

nlohmann::json state_to_json(const AnyState& state, std::string_view label) {
  auto pair = [](Complex z) { return json::array({z.real(), z.imag()}); };
  json out;
  out["dims"] = profile_of(state).dims();
  if (const auto* psi = std::get_if<PureState>(&state)) {
    out["kind"] = "pure";
    json amps = json::array();
    for (Eigen::Index i = 0; i < psi->amplitudes().size(); ++i) amps.push_back(pair(psi->amplitudes()(i)));
    out["amplitudes"] = std::move(amps);
  } else {
    const auto& m = std::get<DensityMatrix>(state).matrix();
    out["kind"] = "mixed";
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(pair(m(r, c)));
      rows.push_back(std::move(row));
    }
    out["matrix"] = std::move(rows);
  }
  if (!label.empty()) out["label"] = std::string(label);
  return out;
}

DensityMatrix as_density(const AnyState& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) return densify(*psi);
  return std::get<DensityMatrix>(state);
}

const DimProfile& profile_of(const AnyState& state) {
  return std::visit([](const auto& s) -> const DimProfile& { return s.profile(); }, state);
}

}  // namespace monogamy
