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

#pragma once

// Batch experiment runner driven by a JSON config.
//
// Top-level keys: experiment, seed, output_dir, model, numerics, evolve,
// stationary, validate, sweep. Which sections and keys are accepted depends
// on the experiment kind; see experiment_schema_text() or the README.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace semiquant {

struct ConfigReport {
  bool ok = true;
  /// One message per problem, each naming the offending key (e.g. "numerics.dim").
  std::vector<std::string> problems;
};

/// Schema check of a config document (JSON text) without running anything.
ConfigReport validate_config_text(const std::string& json_text);
/// Reads the file; an unreadable file is reported as a problem.
ConfigReport validate_config_file(const std::filesystem::path& path);

struct RunOptions {
  /// Overrides output_dir from the config when set.
  std::optional<std::filesystem::path> output_dir;
  /// Overrides seed from the config when set.
  std::optional<std::uint64_t> seed;
  /// Worker threads for sweeps (>= 1).
  unsigned jobs = 1;
};

struct RunResult {
  std::filesystem::path run_dir;
};

/// Runs the experiment and writes CSVs, summary.json and manifest.json into
/// <output_dir>/<experiment>-<config hash>. Throws Error with kind config for
/// schema problems and numerical for solver failures.
RunResult run_experiment_file(const std::filesystem::path& config_path, const RunOptions& opts = {});
RunResult run_experiment_text(const std::string& json_text, const RunOptions& opts = {});

/// Human-readable description of the accepted keys and their defaults.
std::string experiment_schema_text();

}  // namespace semiquant
