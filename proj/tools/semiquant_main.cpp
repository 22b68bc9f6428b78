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

// semiquant run <config.json> [--output-dir DIR] [--seed N] [--jobs N]
// semiquant validate <config.json>
// semiquant schema
//
// Exit codes: 0 success, 1 config / usage / i/o error, 2 numerical failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semiquant/semiquant.h"

namespace {

int exit_code(sq_status s) {
  switch (s) {
    case SQ_OK:
      return 0;
    case SQ_ERR_CONFIG:
    case SQ_ERR_PARSE:
    case SQ_ERR_INVALID_ARGUMENT:
    case SQ_ERR_IO:
      return 1;
    default:
      return 2;
  }
}

// (buf, cap, needed) pattern. Starts with a generous buffer so calls with side
// effects (sq_run) normally execute once.
template <class F>
sq_status fetch_string(F&& call, std::string& out) {
  std::vector<char> buf(4096);
  size_t needed = 0;
  sq_status s = call(buf.data(), buf.size(), &needed);
  if (s == SQ_ERR_BUFFER_TOO_SMALL) {
    buf.assign(needed, '\0');
    s = call(buf.data(), buf.size(), &needed);
  }
  out.assign(buf.data());
  return s;
}

int report_failure(sq_status s) {
  std::cerr << "semiquant: " << sq_status_name(s) << ": " << sq_last_error() << "\n";
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semiclassical quantization toolkit: batch experiment runner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sq_version()));

  std::string config;
  std::string output_dir;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config, "experiment config (JSON)")->required();
  auto* out_opt = run->add_option("--output-dir", output_dir, "directory for run outputs (overrides output_dir)");
  auto* seed_opt = run->add_option("--seed", seed, "random seed (overrides seed)");
  run->add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", config, "experiment config (JSON)")->required();

  auto* schema = app.add_subcommand("schema", "print the accepted config keys");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*schema) {
    std::string text;
    const sq_status s = fetch_string([](char* b, size_t c, size_t* n) { return sq_config_schema(b, c, n); }, text);
    if (s != SQ_OK) return report_failure(s);
    std::cout << text;
    return 0;
  }

  if (*validate) {
    std::string report;
    const sq_status s = fetch_string(
        [&](char* b, size_t c, size_t* n) { return sq_config_validate(config.c_str(), b, c, n); }, report);
    if (s == SQ_OK) {
      std::cout << config << ": valid\n";
      return 0;
    }
    if (s == SQ_ERR_CONFIG) {
      std::cerr << config << ": invalid\n" << report;
      return 1;
    }
    return report_failure(s);
  }

  sq_run_options opts{};
  opts.output_dir = *out_opt ? output_dir.c_str() : nullptr;
  opts.has_seed = *seed_opt ? 1 : 0;
  opts.seed = seed;
  opts.jobs = jobs;
  std::string run_dir;
  const sq_status s = fetch_string(
      [&](char* b, size_t c, size_t* n) { return sq_run(config.c_str(), &opts, b, c, n); }, run_dir);
  if (s != SQ_OK) return report_failure(s);
  std::cout << run_dir << "\n";
  return 0;
}
