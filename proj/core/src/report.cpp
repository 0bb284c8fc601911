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

#include "monogamy_lab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace monogamy {
namespace {

using nlohmann::json;

struct Scale {
  bool bits;
  double operator()(double nats) const {
    return round_significant(bits ? nats / std::numbers::ln2 : nats);
  }
};

std::string units(const ReportOptions& opt) { return opt.bits ? "bits" : "nats"; }

json to_json(const MutualInfos& mi, Scale s) {
  return json{{"i_xy_ab", s(mi.xy_ab)}, {"i_x_ab", s(mi.x_ab)}, {"i_y_ab", s(mi.y_ab)}};
}

std::string csv_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_field(const json& v) {
  std::string text = v.is_string() ? v.get<std::string>() : v.dump();
  if (text.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : text) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return text;
}

void flatten(const json& node, const std::string& prefix,
             std::vector<std::pair<std::string, json>>& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items())
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i)
      flatten(node[i], prefix + "." + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, node);
  }
}

}  // namespace

double round_significant(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

json to_json(const CcqAnalysis& a, const ReportOptions& opt) {
  const Scale s{opt.bits};
  json spectrum = json::array();
  for (double l : a.spectrum) spectrum.push_back(round_significant(l));
  return json{
      {"units", units(opt)},
      {"d", a.d},
      {"spectrum", std::move(spectrum)},
      {"degeneracy", a.degeneracy},
      {"degenerate", a.degenerate()},
      {"chi0", s(a.chi0)},
      {"chi1", s(a.chi1)},
      {"mutual_information_ab", s(a.mutual_information_ab)},
      {"closed", to_json(a.closed, s)},
      {"direct", to_json(a.direct, s)},
      {"gap", s(a.gap)},
      {"epsilon", s(a.epsilon)},
      {"additive", a.additive},
      {"closed_direct_residual", s(a.closed_direct_residual)},
      {"holevo_identity_residual", s(a.holevo_identity_residual)},
  };
}

json to_json(const MonogamyReport& r, const ReportOptions& opt) {
  const Scale s{opt.bits};
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back(json{
        {"partner", p.partner},
        {"eof", s(p.eof)},
        {"method", std::string(to_string(p.method))},
        {"converged", p.converged},
        {"ccq", to_json(p.ccq, opt)},
    });
  }
  return json{
      {"units", units(opt)},
      {"anchor", r.anchor},
      {"dims", r.dims},
      {"epsilon", s(r.epsilon)},
      {"total_eof", s(r.total_eof)},
      {"total_method", std::string(to_string(r.total_method))},
      {"total_converged", r.total_converged},
      {"pairs", std::move(pairs)},
      {"pair_sum", s(r.pair_sum)},
      {"monogamy_gap", s(r.monogamy_gap)},
      {"delta", s(r.delta)},
      {"condition_holds", r.condition_holds},
      {"inequality", std::string(to_string(r.inequality))},
      {"inequality_holds", r.inequality_holds},
      {"consistent", r.consistent},
      {"all_converged", r.all_converged},
  };
}

json to_json(const SampleRecord& rec, const ReportOptions& opt) {
  const Scale s{opt.bits};
  json gaps = json::array();
  for (double g : rec.gaps) gaps.push_back(s(g));
  return json{
      {"index", rec.index},
      {"seed", rec.seed},
      {"dims", rec.dims},
      {"total_eof", s(rec.total_eof)},
      {"monogamy_gap", s(rec.monogamy_gap)},
      {"gaps", std::move(gaps)},
      {"condition_holds", rec.condition_holds},
      {"inequality_holds", rec.inequality_holds},
      {"consistent", rec.consistent},
      {"converged", rec.converged},
  };
}

json to_json(const KoashiWinterResult& k, const ReportOptions& opt) {
  const Scale s{opt.bits};
  return json{
      {"residual", s(k.residual)},
      {"entropy", s(k.entropy)},
      {"classical_correlation", s(k.classical_correlation)},
      {"eof", s(k.eof)},
      {"eof_exact", k.eof_exact},
      {"converged", k.converged},
  };
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

std::string samples_to_csv(const std::vector<SampleRecord>& records, const ReportOptions& opt) {
  const double scale = opt.bits ? 1.0 / std::numbers::ln2 : 1.0;
  std::ostringstream os;
  os << std::boolalpha;
  os << "index,seed,dims,total_eof,monogamy_gap,gaps,condition_holds,inequality_holds,"
        "consistent,converged\n";
  for (const auto& r : records) {
    std::string dims;
    for (std::size_t k = 0; k < r.dims.size(); ++k) dims += (k ? "x" : "") + std::to_string(r.dims[k]);
    std::string gaps;
    for (std::size_t k = 0; k < r.gaps.size(); ++k) gaps += (k ? ";" : "") + csv_number(r.gaps[k] * scale);
    os << r.index << ',' << r.seed << ',' << dims << ',' << csv_number(r.total_eof * scale) << ','
       << csv_number(r.monogamy_gap * scale) << ',' << gaps << ',' << r.condition_holds << ','
       << r.inequality_holds << ',' << r.consistent << ',' << r.converged << '\n';
  }
  return os.str();
}

std::string json_to_csv(const json& report) {
  std::vector<std::pair<std::string, json>> fields;
  flatten(report, "", fields);
  std::string header;
  std::string values;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) {
      header += ',';
      values += ',';
    }
    header += csv_field(json(fields[i].first));
    values += csv_field(fields[i].second);
  }
  return header + "\n" + values + "\n";
}

}  // namespace monogamy
