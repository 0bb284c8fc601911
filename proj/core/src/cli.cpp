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

#include "monogamy_lab/cli.hpp"

#include <charconv>
#include <numbers>
#include <cstdint>
#include <ostream>
#include <string_view>

#include <CLI11.hpp>

#include "monogamy_lab/ccq.hpp"
#include "monogamy_lab/errors.hpp"
#include "monogamy_lab/measures.hpp"
#include "monogamy_lab/monogamy.hpp"
#include "monogamy_lab/report.hpp"
#include "monogamy_lab/state_io.hpp"

namespace monogamy::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string state;
  std::size_t anchor = 0;
  std::string pair = "0,1";
  std::string dims;
  std::size_t count = 100;
  double epsilon = kDefaultAdditivityTolerance;
  bool normalize = false;
  bool csv = false;
  bool bits = false;
  bool strict = false;
  std::uint64_t seed = OptimizerConfig{}.seed;
  std::size_t restarts = OptimizerConfig{}.restarts;
  std::size_t max_iters = OptimizerConfig{}.max_iters;
};

std::vector<std::size_t> parse_indices(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  std::string_view rest(text);
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
      throw ContractError(std::string(what) + ": '" + text + "' is not a comma-separated list of integers");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

class Session {
 public:
  Session(const Options& opt, std::ostream& out, std::ostream& err)
      : opt_(opt), out_(out), err_(err) {
    cfg_.seed = opt.seed;
    cfg_.restarts = opt.restarts;
    cfg_.max_iters = opt.max_iters;
    report_.bits = opt.bits;
  }

  AnyState load() const {
    ParseOptions po;
    po.normalize = opt_.normalize;
    po.log = &err_;
    return parse_state(opt_.state, po);
  }

  int analyze() {
    const AnyState state = load();
    const DensityMatrix rho = as_density(state);
    const std::size_t n = rho.sites();

    json summary{{"dims", rho.profile().dims()},
                 {"kind", std::holds_alternative<PureState>(state) ? "pure" : "mixed"},
                 {"purity", round_significant(rho.purity())}};
    json entropies = json::array();
    for (std::size_t s = 0; s < n; ++s)
      entropies.push_back(scale(von_neumann_entropy(marginal(rho, {s}))));
    summary["site_entropies"] = std::move(entropies);

    json report{{"command", "analyze"}, {"units", opt_.bits ? "bits" : "nats"}, {"state", std::move(summary)}};
    if (n == 2) {
      json pair;
      if (rho.profile() == DimProfile{2, 2}) {
        pair["eof"] = scale(eof_two_qubit(rho));
        pair["eof_method"] = std::string(to_string(EofMethod::TwoQubitExact));
      } else {
        const auto roof = eof_mixed_numeric(rho, Bipartition{{0}, {1}}, cfg_);
        pair["eof"] = scale(roof.value);
        pair["eof_method"] = std::string(to_string(EofMethod::ConvexRoofNumeric));
        note_convergence(roof.converged);
      }
      pair["ccq_measure_1"] = to_json(additivity_gap(rho, opt_.epsilon), report_);
      pair["ccq_measure_0"] = to_json(additivity_gap(marginal(rho, {1, 0}), opt_.epsilon), report_);
      json cc = json::array();
      for (std::size_t measured : {1, 0}) {
        const auto r = cc_one_way(rho, measured, cfg_);
        note_convergence(r.converged);
        cc.push_back(json{{"measured", measured}, {"value", scale(r.value)}, {"converged", r.converged}});
      }
      pair["cc_one_way"] = std::move(cc);
      report["pair"] = std::move(pair);
    } else if (n >= 3) {
      json reports = json::array();
      for (std::size_t anchor = 0; anchor < n; ++anchor) {
        const MonogamyReport r = certify(state, rho, anchor);
        reports.push_back(to_json(r, report_));
      }
      report["monogamy"] = std::move(reports);
      if (const auto* psi = std::get_if<PureState>(&state); psi != nullptr && n == 3) {
        json kw = json::array();
        for (std::size_t anchor = 0; anchor < 3; ++anchor) {
          for (std::size_t via = 0; via < 3; ++via) {
            if (via == anchor) continue;
            const auto k = koashi_winter_residual(*psi, anchor, via, cfg_);
            note_convergence(k.converged);
            json entry = to_json(k, report_);
            entry["anchor"] = anchor;
            entry["via"] = via;
            kw.push_back(std::move(entry));
          }
        }
        report["koashi_winter"] = std::move(kw);
      }
    }
    return emit(report);
  }

  int ccq() {
    const DensityMatrix rho = as_density(load());
    const auto pair = parse_indices(opt_.pair, "--pair");
    if (pair.size() != 2 || pair[0] == pair[1] || pair[0] >= rho.sites() || pair[1] >= rho.sites())
      throw ContractError("--pair must name two distinct sites of the state");
    json report = to_json(additivity_gap(marginal(rho, {pair[0], pair[1]}), opt_.epsilon), report_);
    report["command"] = "ccq";
    report["pair"] = pair;
    return emit(report);
  }

  int monogamy() {
    const AnyState state = load();
    const DensityMatrix rho = as_density(state);
    if (opt_.anchor >= rho.sites()) throw ContractError("--anchor is out of range for the state");
    json report = to_json(certify(state, rho, opt_.anchor), report_);
    report["command"] = "monogamy";
    return emit(report);
  }

  int sample() {
    const DimProfile dims(parse_indices(opt_.dims, "--dims"));
    const auto records = sample_study(dims, opt_.count, opt_.seed, opt_.epsilon, cfg_);
    for (const auto& r : records) note_convergence(r.converged);
    if (opt_.csv) {
      out_ << samples_to_csv(records, report_);
      return finish();
    }
    json list = json::array();
    for (const auto& r : records) list.push_back(to_json(r, report_));
    json report{{"command", "sample"},
                {"units", opt_.bits ? "bits" : "nats"},
                {"dims", dims.dims()},
                {"count", opt_.count},
                {"seed", opt_.seed},
                {"records", std::move(list)}};
    out_ << dump_report(report);
    return finish();
  }

 private:
  double scale(double nats) const {
    return round_significant(opt_.bits ? nats / std::numbers::ln2 : nats);
  }

  MonogamyReport certify(const AnyState& state, const DensityMatrix& rho, std::size_t anchor) {
    const auto* psi = std::get_if<PureState>(&state);
    MonogamyReport r = psi != nullptr && rho.sites() == 3
                           ? certify_tripartite(*psi, anchor, opt_.epsilon, cfg_)
                           : certify_multiparty(rho, anchor, opt_.epsilon, cfg_);
    note_convergence(r.all_converged);
    return r;
  }

  void note_convergence(bool converged) { all_converged_ = all_converged_ && converged; }

  int emit(const json& report) {
    out_ << (opt_.csv ? json_to_csv(report) : dump_report(report));
    return finish();
  }

  int finish() const {
    if (opt_.strict && !all_converged_) {
      err_ << "monogamy_lab: optimizer did not converge (--strict)\n";
      return kNotConverged;
    }
    return kOk;
  }

  const Options& opt_;
  std::ostream& out_;
  std::ostream& err_;
  OptimizerConfig cfg_;
  ReportOptions report_;
  bool all_converged_ = true;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Certify entanglement-of-formation monogamy via ccq mutual-information additivity"};
  app.name(args.empty() ? "monogamy_lab" : args.front());
  app.require_subcommand(1, 1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--epsilon", opt.epsilon, "Additivity tolerance in nats")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--normalize", opt.normalize, "Rescale state files that are not normalised");
    sub->add_flag("--csv", opt.csv, "Emit CSV instead of JSON");
    sub->add_flag("--bits", opt.bits, "Display entropic quantities in bits");
    sub->add_option("--seed", opt.seed, "Seed for optimizer restarts and sampling");
    sub->add_option("--restarts", opt.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", opt.max_iters, "Optimizer sweeps per restart")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--strict", opt.strict, "Exit with status 3 if an optimizer did not converge");
  };
  auto* analyze = app.add_subcommand("analyze", "Every analysis for one state");
  analyze->add_option("--state", opt.state, "Builtin spec or state file")->required();
  common(analyze);
  auto* ccq = app.add_subcommand("ccq", "ccq additivity analysis for one ordered pair");
  ccq->add_option("--state", opt.state, "Builtin spec or state file")->required();
  ccq->add_option("--pair", opt.pair, "Sites i,j; j is the measured site")->capture_default_str();
  common(ccq);
  auto* mono = app.add_subcommand("monogamy", "Certify the monogamy inequality for one anchor");
  mono->add_option("--state", opt.state, "Builtin spec or state file")->required();
  mono->add_option("--anchor", opt.anchor, "Anchor site")->capture_default_str();
  common(mono);
  auto* sample = app.add_subcommand("sample", "Certify Haar-random pure states");
  sample->add_option("--dims", opt.dims, "Local dimensions, e.g. 2,2,2")->required();
  sample->add_option("--count", opt.count, "Number of samples")->capture_default_str();
  common(sample);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("monogamy_lab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  Session session(opt, out, err);
  try {
    if (analyze->parsed()) return session.analyze();
    if (ccq->parsed()) return session.ccq();
    if (mono->parsed()) return session.monogamy();
    return session.sample();
  } catch (const Error& e) {
    err << app.get_name() << ": error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace monogamy::cli
