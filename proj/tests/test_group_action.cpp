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

#include <cmath>
#include <random>

#include "doctest.h"
#include "rigidlab/error.hpp"
#include "rigidlab/group_action.hpp"
#include "rigidlab/rigidity.hpp"

using namespace rigidlab;

namespace {

GroupWord random_word(std::mt19937_64& rng, std::size_t generators) {
  std::vector<WordLetter> letters;
  const std::size_t len = rng() % 9;
  while (letters.size() < len) {
    const std::size_t id = rng() % generators;
    if (!letters.empty() && letters.back().index == id) continue;
    auto e = static_cast<std::int64_t>(rng() % 4) - 2;
    if (e == 0) e = 1;
    letters.push_back({id, e});
  }
  return GroupWord(letters);
}

}  // namespace

TEST_CASE("generator set validation") {
  CHECK_THROWS_AS(GeneratorSet::make(Matrix2{1, 1, 0, 1}, {2}), DomainError);
  CHECK_THROWS_AS(GeneratorSet::make(kCatMap, {4, 2}), DomainError);
  CHECK_THROWS_AS(GeneratorSet::make(kCatMap, {2, 2}), DomainError);
  CHECK_THROWS_AS(GeneratorSet::make(Matrix2{3, 1, 1, 1}, {2}), DomainError);  // det 2
  const auto g = GeneratorSet::make(kCatMap, {2, 4});
  CHECK(g.size() == 3);
  CHECK(g.describe(0) == "A");
  CHECK(g.describe(2) == "B_4");
  CHECK_THROWS_AS(g.generator(3), DomainError);
}

TEST_CASE("group words") {
  CHECK_THROWS_AS(GroupWord({{0, 0}}), DomainError);
  CHECK_THROWS_AS(GroupWord({{1, 1}, {1, 2}}), DomainError);
  const GroupWord w({{0, 2}, {1, -1}});
  CHECK((w * w.inverse()).empty());
  const GroupWord v({{1, 1}, {2, 1}});
  CHECK((w * v).letters().size() == 2);  // B letters merge: exponent -1 + 1 = 0
  CHECK((w * v).letters()[1].index == 2);
}

TEST_CASE("apply_word examples") {
  const auto g = GeneratorSet::make(kCatMap, {4});
  const TorusPoint a = apply_word(g, GroupWord({{0, 1}}), {0.5, 0.5});
  CHECK(a.x == 0.5);
  CHECK(a.y == 0.0);
  const TorusPoint p{0.3, 0.8};
  const TorusPoint b = apply_word(g, GroupWord({{1, 1}, {0, 1}}), p);
  // B_4 first: (0.5, 0.8); then A: (1.8, 1.3) mod 1.
  CHECK(b.x == doctest::Approx(0.8));
  CHECK(b.y == doctest::Approx(0.3));
  const TorusPoint e = apply_word(g, GroupWord(), p);
  CHECK(e.x == p.x);
  CHECK(e.y == p.y);
  CHECK_THROWS_AS(apply_word(g, GroupWord({{5, 1}}), p), DomainError);
}

TEST_CASE("w w^-1 acts as the identity") {
  const auto g = GeneratorSet::make(kCatMap, {2, 4, 8});
  std::mt19937_64 rng(12);
  for (int t = 0; t < 40; ++t) {
    const GroupWord w = random_word(rng, g.size());
    std::vector<WordLetter> concat = w.letters();
    const auto inv = w.inverse().letters();
    concat.insert(concat.end(), inv.begin(), inv.end());
    for (int i = 0; i < 25; ++i) {
      const TorusPoint p{static_cast<double>(rng() >> 11) * 0x1.0p-53, static_cast<double>(rng() >> 11) * 0x1.0p-53};
      // Letter by letter, without cancelling in the free group.
      Point q = p;
      for (const auto& l : concat) q = iterate(g.generator(l.index), l.exponent, q);
      CHECK(metric_distance(q, Point(p)) < 1e-12);
    }
  }
}

TEST_CASE("rigidity witness profile") {
  const auto g = GeneratorSet::make(kCatMap, {2, 4, 8, 10, 16, 32, 64});
  const auto prof = rigidity_witness_profile(g, GridPlan{1000, std::nullopt});
  REQUIRE(prof.size() == 7);
  for (std::size_t i = 0; i < prof.size(); ++i) {
    CHECK(prof[i].displacement <= 1.0 / static_cast<double>(prof[i].n));
    CHECK(prof[i].displacement == doctest::Approx(0.999 / static_cast<double>(prof[i].n)).epsilon(1e-12));
    if (i > 0) CHECK(prof[i].displacement < prof[i - 1].displacement);
  }
  CHECK(prof[3].displacement == doctest::Approx(0.0999));
  CHECK(rigidity_witness_profile(GeneratorSet::make(kCatMap, {}), GridPlan{}).empty());
}

TEST_CASE("measure preservation") {
  const auto tw = TransformSpec::twist(5);
  CHECK(measure_preservation_deviation(tw, 16, 1000000, 11) < 0.02);
  CHECK(measure_preservation_deviation(TransformSpec::toral(kCatMap), 16, 1000000, 11) < 0.02);
  // Identity word: the deviation is that of the raw sample.
  const auto g = GeneratorSet::make(kCatMap, {5});
  const auto id = word_spec(g, GroupWord());
  const double base = measure_preservation_deviation(id, 16, 200000, 3, SamplingScheme::kIid);
  std::vector<std::uint64_t> h(256, 0);
  for (std::size_t i = 0; i < 200000; ++i) {
    const auto bx = static_cast<int>(hashed_uniform01(3, 2 * i) * 16);
    const auto by = static_cast<int>(hashed_uniform01(3, 2 * i + 1) * 16);
    ++h[static_cast<std::size_t>(by * 16 + bx)];
  }
  double worst = 0.0;
  for (auto c : h) worst = std::max(worst, std::fabs(static_cast<double>(c) - 200000.0 / 256) / (200000.0 / 256));
  CHECK(base == doctest::Approx(worst).epsilon(1e-12));
  // Stratified identity is exact when the lattice refines the bins.
  CHECK(measure_preservation_deviation(id, 16, 256 * 256, 3) == 0.0);
  CHECK(measure_preservation_deviation(tw, 8, 40000, 5, SamplingScheme::kIid, Exec::kSerial) ==
        measure_preservation_deviation(tw, 8, 40000, 5, SamplingScheme::kIid, Exec::kParallel));
  CHECK_THROWS_AS(measure_preservation_deviation(tw, 1, 100, 1), DomainError);
  CHECK_THROWS_AS(measure_preservation_deviation(tw, 16, 100, 1), DomainError);
}

TEST_CASE("simultaneity report") {
  SimultaneityParams p;
  p.mixing_horizon = 100;
  p.mixing_samples = 20000;
  p.preservation_samples = 250000;
  p.displacement_grid = 200;
  const auto g = GeneratorSet::make(kCatMap, {2, 4, 8, 16, 32, 64});
  const DiagnosticsReport rep = simultaneity_report(g, p);
  CHECK(rep.all_pass());
  CHECK(rep.results["rigidity"]["present"] == true);
  CHECK(rep.results["rigidity"]["min_displacement"].get<double>() <= 1.0 / 64);
  for (const auto& v : rep.verdicts) CHECK(v.id == "AC9");
  const DiagnosticsReport none = simultaneity_report(GeneratorSet::make(kCatMap, {}), p);
  CHECK(none.results["rigidity"]["present"] == false);
}
