// Copyright 2026 The rigidlab Authors
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

#ifndef RIGIDLAB_EXPERIMENTS_HPP_
#define RIGIDLAB_EXPERIMENTS_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "rigidlab/kernels.hpp"
#include "rigidlab/precise.hpp"
#include "rigidlab/report.hpp"

namespace rigidlab {

struct TableInfo {
  std::string name;
  std::vector<std::string> columns;
};

struct ExperimentInfo {
  std::string kind;
  std::string module;
  std::string summary;
  std::vector<std::string> criteria;   // acceptance ids its verdicts carry
  std::vector<std::string> seeds;      // params fields that must be given
  std::vector<TableInfo> tables;
  nlohmann::json defaults;             // full parameter schema with defaults
};

// Alphabetized by kind.
const std::vector<ExperimentInfo>& list_experiments();
const ExperimentInfo& experiment_info(const std::string& kind);
std::string catalog_text();

struct ExperimentConfig {
  std::string kind;
  std::string name;
  nlohmann::json params;  // defaults merged with the user's values
  std::filesystem::path out_dir = ".";
};

// Config with every parameter at its schema default (seeds included).
ExperimentConfig default_config(const std::string& kind);

// Validates a config document:
//   {"experiment": kind, "name": ..., "params": {...}, "output": {"dir": ...}}
// Unknown fields, type mismatches and missing seeds throw ConfigError with
// the offending path.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

// Sets params[key] after checking it against the schema; key may be dotted
// ("params.horizon" or "horizon").
void set_param(ExperimentConfig& cfg, const std::string& key, const nlohmann::json& value);

// Replaces every seed parameter with `seed`.
void override_seeds(ExperimentConfig& cfg, std::uint64_t seed);

// Dispatches to the diagnostic modules. Module errors are recorded in the
// report's error list rather than thrown.
DiagnosticsReport run_experiment(const ExperimentConfig& cfg, Exec exec = Exec::kParallel);

// alpha given as a decimal, "golden", "silver", or {"cf": [a0, a1, ...]}.
DoubleDouble parse_alpha(const nlohmann::json& v, const std::string& path);
DoubleDouble alpha_from_continued_fraction(const std::vector<std::int64_t>& terms);

}  // namespace rigidlab

#endif  // RIGIDLAB_EXPERIMENTS_HPP_
