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

#ifndef RIGIDLAB_REPORT_HPP_
#define RIGIDLAB_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rigidlab/regions.hpp"

namespace rigidlab {

inline constexpr const char* kVersion = "0.3.0";

// Floating-point text with 17 significant digits (round-trips exactly).
std::string format_real(double v);

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::string to_csv() const;
};

enum class Comparator { kLess, kLessEqual, kGreater, kGreaterEqual, kEqual };

std::string_view to_string(Comparator c);

struct Verdict {
  std::string id;         // acceptance criterion id, e.g. "AC7"
  std::string criterion;  // short description
  Comparator comparator = Comparator::kLess;
  double threshold = 0.0;
  double value = 0.0;
  bool pass = false;
};

Verdict make_verdict(std::string id, std::string criterion, double value, Comparator cmp, double threshold);
// For structural checks that are simply true or false.
Verdict make_check(std::string id, std::string criterion, bool ok);

struct DiagnosticsReport {
  std::string experiment;
  std::string name;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json seeds = nlohmann::json::object();
  std::vector<Table> tables;
  std::vector<Verdict> verdicts;
  std::vector<std::string> errors;

  bool all_pass() const;
  void merge(DiagnosticsReport other, const std::string& prefix);

  nlohmann::json to_json() const;
  // Writes <name>.report.json and <name>.<table>.csv into dir. The
  // generation timestamp is the only non-reproducible field and lives in
  // the report's "metadata" block.
  std::vector<std::filesystem::path> write(const std::filesystem::path& dir, bool timestamp = true) const;
};

nlohmann::json region_to_json(const Region& r);
Region region_from_json(const nlohmann::json& j);

}  // namespace rigidlab

#endif  // RIGIDLAB_REPORT_HPP_
