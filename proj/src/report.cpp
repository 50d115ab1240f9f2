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

#include "rigidlab/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "rigidlab/error.hpp"

namespace rigidlab {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw DomainError("table '" + name + "': row width differs from header");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      std::visit(
          [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::int64_t>) {
              out += std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
              out += format_real(v);
            } else {
              out += v;
            }
          },
          row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string_view to_string(Comparator c) {
  switch (c) {
    case Comparator::kLess: return "<";
    case Comparator::kLessEqual: return "<=";
    case Comparator::kGreater: return ">";
    case Comparator::kGreaterEqual: return ">=";
    case Comparator::kEqual: return "==";
  }
  return "?";
}

Verdict make_verdict(std::string id, std::string criterion, double value, Comparator cmp, double threshold) {
  Verdict v{std::move(id), std::move(criterion), cmp, threshold, value, false};
  switch (cmp) {
    case Comparator::kLess: v.pass = value < threshold; break;
    case Comparator::kLessEqual: v.pass = value <= threshold; break;
    case Comparator::kGreater: v.pass = value > threshold; break;
    case Comparator::kGreaterEqual: v.pass = value >= threshold; break;
    case Comparator::kEqual: v.pass = value == threshold; break;
  }
  return v;
}

Verdict make_check(std::string id, std::string criterion, bool ok) {
  return make_verdict(std::move(id), std::move(criterion), ok ? 1.0 : 0.0, Comparator::kEqual, 1.0);
}

bool DiagnosticsReport::all_pass() const {
  if (!errors.empty()) return false;
  for (const auto& v : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

void DiagnosticsReport::merge(DiagnosticsReport other, const std::string& prefix) {
  results[prefix] = std::move(other.results);
  for (auto& [k, v] : other.seeds.items()) seeds[prefix + "." + k] = v;
  for (auto& t : other.tables) {
    t.name = prefix + "_" + t.name;
    tables.push_back(std::move(t));
  }
  for (auto& v : other.verdicts) verdicts.push_back(std::move(v));
  for (auto& e : other.errors) errors.push_back(prefix + ": " + e);
}

nlohmann::json DiagnosticsReport::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["name"] = name;
  j["config"] = config;
  j["provenance"] = {{"artifact", "rigidlab"}, {"version", kVersion}, {"seeds", seeds}};
  j["results"] = results;
  nlohmann::json tabs = nlohmann::json::array();
  for (const auto& t : tables) {
    tabs.push_back({{"name", t.name}, {"file", name + "." + t.name + ".csv"}, {"columns", t.columns},
                    {"rows", t.rows.size()}});
  }
  j["tables"] = tabs;
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : verdicts) {
    vs.push_back({{"id", v.id},
                  {"criterion", v.criterion},
                  {"comparator", std::string(to_string(v.comparator))},
                  {"threshold", format_real(v.threshold)},
                  {"value", format_real(v.value)},
                  {"pass", v.pass}});
  }
  j["verdicts"] = vs;
  j["errors"] = errors;
  j["pass"] = all_pass();
  return j;
}

std::vector<std::filesystem::path> DiagnosticsReport::write(const std::filesystem::path& dir, bool timestamp) const {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  nlohmann::json j = to_json();
  if (timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["metadata"] = {{"generated_at", buf}};
  }
  const auto report_path = dir / (name + ".report.json");
  {
    std::ofstream os(report_path, std::ios::binary);
    if (!os) throw Error("cannot write " + report_path.string());
    os << j.dump(2) << '\n';
  }
  written.push_back(report_path);
  for (const auto& t : tables) {
    const auto p = dir / (name + "." + t.name + ".csv");
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error("cannot write " + p.string());
    os << t.to_csv();
    written.push_back(p);
  }
  return written;
}

nlohmann::json region_to_json(const Region& r) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(r.kind));
  nlohmann::json comps = nlohmann::json::array();
  switch (r.kind) {
    case RegionKind::kCircleIntervals:
      for (const auto& iv : r.intervals) comps.push_back({iv.lo, iv.hi});
      break;
    case RegionKind::kTorusRects:
      for (const auto& q : r.rects) comps.push_back({q.x0, q.x1, q.y0, q.y1});
      break;
    case RegionKind::kCantorCylinders:
      j["depth"] = r.depth;
      for (const auto& s : r.cylinders) comps.push_back(s);
      break;
  }
  j["components"] = comps;
  return j;
}

Region region_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("components")) {
    throw DomainError("region JSON needs 'kind' and 'components'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  const auto& comps = j.at("components");
  if (!comps.is_array()) throw DomainError("region 'components' must be an array");
  if (kind == "circle_intervals") {
    std::vector<Interval> iv;
    for (const auto& c : comps) {
      if (!c.is_array() || c.size() != 2) throw DomainError("circle interval must be [lo, hi]");
      iv.push_back({c[0].get<double>(), c[1].get<double>()});
    }
    return Region::circle(std::move(iv));
  }
  if (kind == "torus_rects") {
    std::vector<Rect> rs;
    for (const auto& c : comps) {
      if (!c.is_array() || c.size() != 4) throw DomainError("torus rect must be [x0, x1, y0, y1]");
      rs.push_back({c[0].get<double>(), c[1].get<double>(), c[2].get<double>(), c[3].get<double>()});
    }
    return Region::torus(std::move(rs));
  }
  if (kind == "cantor_cylinders") {
    std::vector<std::string> cs;
    for (const auto& c : comps) cs.push_back(c.get<std::string>());
    return Region::cantor(std::move(cs), j.value("depth", kDefaultCantorDepth));
  }
  throw DomainError("unknown region kind '" + kind + "'");
}

}  // namespace rigidlab
