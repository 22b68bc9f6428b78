// Copyright 2026 The semiquant Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "semiquant/error.hpp"
#include "semiquant/experiment.hpp"

using namespace semiquant;
namespace fs = std::filesystem;

namespace {

bool mentions(const ConfigReport& r, const std::string& needle) {
  for (const auto& p : r.problems)
    if (p.find(needle) != std::string::npos) return true;
  return false;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const char* name) {
  const fs::path d = fs::temp_directory_path() / "semiquant-unit" / name;
  fs::remove_all(d);
  return d;
}

const char* kFlow = R"({
  "experiment": "classical-flow",
  "model": {"hamiltonian": "z1*z1c", "initial": [[[1.0, 0.0]]]},
  "evolve": {"dt": 0.1, "t_end": 1.0}
})";

}  // namespace

TEST_CASE("config validation names the key") {
  CHECK(validate_config_text(kFlow).ok);
  const auto missing = validate_config_text(R"({"experiment": "limit-cycle", "model": {"lambda": 1, "mu": 1}})");
  CHECK_FALSE(missing.ok);
  CHECK(mentions(missing, "numerics.dim"));
  const auto unknown = validate_config_text(
      R"({"experiment": "limit-cycle", "model": {"lambda": 1, "mu": 1, "bogus": 2}, "numerics": {"dim": 10}})");
  CHECK(mentions(unknown, "model.bogus"));
  const auto kind = validate_config_text(R"({"experiment": "nope"})");
  CHECK(mentions(kind, "oscillator"));
  const auto type = validate_config_text(
      R"({"experiment": "limit-cycle", "model": {"lambda": "x", "mu": 1}, "numerics": {"dim": 10}})");
  CHECK(mentions(type, "model.lambda"));
  CHECK_FALSE(validate_config_text("{not json").ok);
  const auto sweep = validate_config_text(
      R"({"experiment": "limit-cycle", "model": {"lambda": 1, "mu": 1}, "numerics": {"dim": 10},
          "sweep": {"parameter": "model.nothing", "values": [1]}})");
  CHECK(mentions(sweep, "sweep.parameter"));
  const auto empty = validate_config_text(
      R"({"experiment": "limit-cycle", "model": {"lambda": 1, "mu": 1}, "numerics": {"dim": 10},
          "sweep": {"parameter": "model.mu", "values": []}})");
  CHECK(mentions(empty, "sweep.values"));
}

TEST_CASE("schema lists every kind") {
  const std::string s = experiment_schema_text();
  for (const char* k : {"oscillator", "limit-cycle", "rotators", "classical-flow", "conformance"})
    CHECK(s.find(k) != std::string::npos);
}

TEST_CASE("runs are deterministic and land in a hashed directory") {
  const fs::path out = scratch("flow");
  RunOptions o;
  o.output_dir = out;
  const auto a = run_experiment_text(kFlow, o);
  CHECK(fs::exists(a.run_dir / "summary.json"));
  CHECK(fs::exists(a.run_dir / "manifest.json"));
  CHECK(fs::exists(a.run_dir / "trajectory_0.csv"));
  const std::string first = slurp(a.run_dir / "trajectory_0.csv");
  const std::string summary = slurp(a.run_dir / "summary.json");
  const auto b = run_experiment_text(kFlow, o);
  CHECK(a.run_dir == b.run_dir);
  CHECK(slurp(b.run_dir / "trajectory_0.csv") == first);
  CHECK(slurp(b.run_dir / "summary.json") == summary);

  o.seed = 99;
  const auto c = run_experiment_text(kFlow, o);
  CHECK(c.run_dir != a.run_dir);
  CHECK(nlohmann::json::parse(slurp(c.run_dir / "summary.json"))["seed"] == 99);
}

TEST_CASE("invalid configs raise config errors") {
  try {
    run_experiment_text(R"({"experiment": "oscillator"})");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
  }
  CHECK_THROWS_AS(run_experiment_file("/nonexistent/config.json"), Error);
}

TEST_CASE("sweeps write one row per value") {
  const fs::path out = scratch("sweep");
  RunOptions o;
  o.output_dir = out;
  o.jobs = 2;
  const auto r = run_experiment_text(R"({
    "experiment": "limit-cycle",
    "model": {"lambda": 1.0, "mu": 1.0},
    "numerics": {"dim": 8, "n_max": 30},
    "sweep": {"parameter": "model.lambda", "values": [0.5, 1.0]}
  })", o);
  const std::string csv = slurp(r.run_dir / "sweep.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
