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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "monogamy_lab/cli.hpp"
#include "monogamy_lab/report.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "monogamy_lab");
  std::ostringstream out, err;
  const int code = monogamy::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

bool all_numbers_rounded(const json& j) {
  if (j.is_number_float()) {
    const double x = j.get<double>();
    return monogamy::round_significant(x) == x;
  }
  if (j.is_structured()) {
    for (const auto& item : j)
      if (!all_numbers_rounded(item)) return false;
  }
  return true;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("monogamy on GHZ") {
  const auto r = run({"monogamy", "--state", "ghz:2,3", "--anchor", "0"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["command"] == "monogamy");
  CHECK(j["condition_holds"] == true);
  CHECK(j["inequality"] == "holds");
  CHECK(j["monogamy_gap"].get<double>() == doctest::Approx(std::numbers::ln2).epsilon(1e-11));
  CHECK(j["units"] == "nats");
}

TEST_CASE("ccq on the W pair") {
  const auto r = run({"ccq", "--state", "w:3", "--pair", "0,1"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["gap"].get<double>() == doctest::Approx(0.206848).epsilon(1e-6));
  CHECK(j["additive"] == false);
  CHECK(j["pair"] == json::array({0, 1}));
}

TEST_CASE("sample emits one CSV row per state and is rerun-identical") {
  const std::vector<std::string> args{"sample", "--dims", "2,2,2", "--count", "100", "--seed", "7",
                                      "--csv", "--restarts", "4"};
  const auto a = run(args);
  REQUIRE(a.code == 0);
  CHECK(count_lines(a.out) == 101);
  CHECK(a.out.rfind("index,seed,dims,", 0) == 0);
  const auto b = run(args);
  CHECK(a.out == b.out);
}

TEST_CASE("exit codes") {
  SUBCASE("unknown flag prints usage") {
    const auto r = run({"ccq", "--state", "w:3", "--bogus"});
    CHECK(r.code == 1);
    CHECK(r.err.find("Usage") != std::string::npos);
  }
  SUBCASE("missing subcommand or required option") {
    CHECK(run({}).code == 1);
    CHECK(run({"monogamy"}).code == 1);
  }
  SUBCASE("help") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("sample") != std::string::npos);
  }
  SUBCASE("validation failures") {
    CHECK(run({"monogamy", "--state", "w:3", "--anchor", "5"}).code == 2);
    CHECK(run({"ccq", "--state", "w:3", "--pair", "1,1"}).code == 2);
    CHECK(run({"ccq", "--state", "/nonexistent.json"}).code == 2);
    const auto path = write_temp("monogamy_lab_cli_unnormalised.json",
                                 R"({"dims": [2, 2], "kind": "pure", "amplitudes": [[1, 0], [0, 0], [0, 0], [1, 0]]})");
    const auto r = run({"ccq", "--state", path.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("1e-6") != std::string::npos);
    const auto fixed = run({"ccq", "--state", path.string(), "--normalize"});
    CHECK(fixed.code == 0);
    CHECK(fixed.err.find("normalised") != std::string::npos);
    std::filesystem::remove(path);
  }
  SUBCASE("non-convergence under --strict") {
    const std::vector<std::string> args{"monogamy", "--state", "ghz:3,3", "--restarts", "2",
                                        "--max-iters", "1"};
    CHECK(run(args).code == 0);
    auto strict = args;
    strict.push_back("--strict");
    CHECK(run(strict).code == 3);
  }
}

TEST_CASE("reports round-trip and use 12 significant digits") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"ccq", "--state", "w:3"},
           {"monogamy", "--state", "w:3", "--anchor", "1"},
           {"analyze", "--state", "ghz:2,3", "--restarts", "3"}}) {
    const auto r = run(args);
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(monogamy::dump_report(j) == r.out);
    CHECK(all_numbers_rounded(j));
  }
}

TEST_CASE("--bits rescales entropic fields only") {
  const auto nats = json::parse(run({"monogamy", "--state", "ghz:2,3"}).out);
  const auto bits = json::parse(run({"monogamy", "--state", "ghz:2,3", "--bits"}).out);
  CHECK(bits["units"] == "bits");
  CHECK(bits["monogamy_gap"].get<double>() == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(bits["total_eof"].get<double>() == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(bits["anchor"] == nats["anchor"]);
  CHECK(bits["condition_holds"] == nats["condition_holds"]);
}

TEST_CASE("analyze covers pairs and multipartite states") {
  const auto path = write_temp("monogamy_lab_cli_pair.json",
                               R"({"dims": [2, 2], "kind": "mixed", "matrix": [
                                 [[0.5, 0], [0, 0], [0, 0], [0.25, 0]],
                                 [[0, 0], [0, 0], [0, 0], [0, 0]],
                                 [[0, 0], [0, 0], [0, 0], [0, 0]],
                                 [[0.25, 0], [0, 0], [0, 0], [0.5, 0]]]})");
  const auto pair = run({"analyze", "--state", path.string(), "--restarts", "3"});
  std::filesystem::remove(path);
  REQUIRE(pair.code == 0);
  const auto p = json::parse(pair.out);
  CHECK(p["state"]["kind"] == "mixed");
  CHECK(p["pair"]["eof_method"] == "two-qubit-exact");
  CHECK(p["pair"]["cc_one_way"].size() == 2);
  CHECK(p["pair"].contains("ccq_measure_0"));

  const auto w = json::parse(run({"analyze", "--state", "w:3", "--restarts", "3"}).out);
  CHECK(w["monogamy"].size() == 3);
  CHECK(w["koashi_winter"].size() == 6);
  for (const auto& k : w["koashi_winter"]) CHECK(std::abs(k["residual"].get<double>()) < 1e-6);
}

TEST_CASE("CSV output for single reports") {
  const auto r = run({"ccq", "--state", "w:3", "--csv"});
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 2);
  CHECK(r.out.find("gap") != std::string::npos);
  CHECK(r.out.find("closed.i_xy_ab") != std::string::npos);
}

#if !defined(_WIN32)
TEST_CASE("installed binary: exit status and thread-count independence") {
  const char* binary = std::getenv("MONOGAMY_LAB_CLI");
  if (binary == nullptr) return;

  auto capture = [&](const std::string& env, const std::string& args, int* status) {
    const std::string cmd = env + " '" + std::string(binary) + "' " + args + " 2>/dev/null";
    std::string text;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    while (std::fgets(buffer, sizeof buffer, pipe) != nullptr) text += buffer;
    *status = pclose(pipe);
    return text;
  };
  int status = 0;
  const std::string args = "sample --dims 2,2,2 --count 12 --seed 3 --csv --restarts 3";
  const auto one = capture("MONOGAMY_LAB_THREADS=1", args, &status);
  CHECK(status == 0);
  const auto many = capture("MONOGAMY_LAB_THREADS=4", args, &status);
  CHECK(status == 0);
  CHECK(one == many);
  CHECK(count_lines(one) == 13);

  capture("", "ccq --state w:3 --nope", &status);
  CHECK(WEXITSTATUS(status) == 1);
  capture("", "monogamy --state w:3 --anchor 9", &status);
  CHECK(WEXITSTATUS(status) == 2);
}
#endif
