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

// JSON / CSV report emission. Every floating-point field is rounded to 12
// significant digits before serialisation, so emitted reports re-parse and
// re-emit byte-identically.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "monogamy_lab/ccq.hpp"
#include "monogamy_lab/measures.hpp"
#include "monogamy_lab/monogamy.hpp"

namespace monogamy {

struct ReportOptions {
  bool bits = false;  // entropic fields divided by ln 2 for display
};

double round_significant(double x, int digits = 12);

nlohmann::json to_json(const CcqAnalysis& a, const ReportOptions& opt = {});
nlohmann::json to_json(const MonogamyReport& r, const ReportOptions& opt = {});
nlohmann::json to_json(const SampleRecord& s, const ReportOptions& opt = {});
nlohmann::json to_json(const KoashiWinterResult& k, const ReportOptions& opt = {});

/// Two-space indented JSON followed by a newline.
std::string dump_report(const nlohmann::json& report);

/// Header line plus one row per record.
std::string samples_to_csv(const std::vector<SampleRecord>& records, const ReportOptions& opt = {});

/// Flattens a JSON object to a two-line CSV (dotted key paths, then values).
std::string json_to_csv(const nlohmann::json& report);

}  // namespace monogamy
