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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rigidlab/error.hpp"
#include "rigidlab/experiments.hpp"

namespace {

constexpr int kUsageError = 2;

void print_summary(const rigidlab::DiagnosticsReport& rep, const std::vector<std::filesystem::path>& files) {
  for (const auto& v : rep.verdicts) {
    std::cout << (v.pass ? "PASS " : "FAIL ") << v.id << "  " << v.criterion << ": " << rigidlab::format_real(v.value)
              << ' ' << rigidlab::to_string(v.comparator) << ' ' << rigidlab::format_real(v.threshold) << '\n';
  }
  for (const auto& e : rep.errors) std::cout << "ERROR " << e << '\n';
  for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
}

int execute(rigidlab::ExperimentConfig cfg, const std::optional<std::string>& out,
            const std::optional<std::uint64_t>& seed, bool quiet, bool serial) {
  if (out) cfg.out_dir = *out;
  if (seed) rigidlab::override_seeds(cfg, *seed);
  const auto rep = rigidlab::run_experiment(cfg, serial ? rigidlab::Exec::kSerial : rigidlab::Exec::kParallel);
  const auto files = rep.write(cfg.out_dir);
  if (!quiet) print_summary(rep, files);
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigidlab: numerical diagnostics for uniform rigidity and mixing"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  bool serial = false;
  app.add_option("--out", out, "Output directory for <name>.report.json and <name>.<table>.csv");
  app.add_option("--seed-override", seed, "Replace every seed parameter");
  app.add_flag("--quiet", quiet, "Print nothing; use the exit status");
  app.add_flag("--serial", serial, "Use the serial reference kernels");

  auto* list = app.add_subcommand("list", "Print the experiment catalog");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config file");
  run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);

  std::vector<std::pair<CLI::App*, std::string>> kinds;
  std::vector<std::string> sets;
  std::string name;
  for (const auto& info : rigidlab::list_experiments()) {
    auto* sub = app.add_subcommand(info.kind, info.summary);
    sub->add_option("--set", sets, "Parameter override key=value (value parsed as JSON)");
    sub->add_option("--name", name, "Report name (default: the kind)");
    kinds.emplace_back(sub, info.kind);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      std::cout << rigidlab::catalog_text();
      return 0;
    }
    if (run->parsed()) return execute(rigidlab::load_config(config_path), out, seed, quiet, serial);
    for (const auto& [sub, kind] : kinds) {
      if (!sub->parsed()) continue;
      auto cfg = rigidlab::default_config(kind);
      if (!name.empty()) cfg.name = name;
      for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw rigidlab::ConfigError(s, "expected key=value");
        const std::string key = s.substr(0, eq);
        nlohmann::json value;
        try {
          value = nlohmann::json::parse(s.substr(eq + 1));
        } catch (const nlohmann::json::parse_error&) {
          value = s.substr(eq + 1);
        }
        rigidlab::set_param(cfg, key, value);
      }
      return execute(std::move(cfg), out, seed, quiet, serial);
    }
  } catch (const rigidlab::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsageError;
}
