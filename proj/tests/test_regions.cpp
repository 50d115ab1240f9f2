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

#include <bitset>
#include <cmath>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "rigidlab/error.hpp"
#include "rigidlab/regions.hpp"
#include "rigidlab/report.hpp"

using namespace rigidlab;

namespace {

constexpr int kD = 10;
using Members = std::bitset<1 << kD>;

// Explicit membership of every depth-kD string.
Members enumerate(const Region& r) {
  Members m;
  for (std::uint64_t x = 0; x < (1u << kD); ++x) m[x] = contains(r, CantorPoint{x, kD});
  return m;
}

Members enumerate_prefixes(const std::vector<std::string>& prefixes) {
  Members m;
  for (const auto& s : prefixes) {
    const std::uint64_t v = cylinder_value(s);
    const std::uint64_t mask = (std::uint64_t{1} << s.size()) - 1;
    for (std::uint64_t x = 0; x < (1u << kD); ++x) {
      if ((x & mask) == v) m[x] = true;
    }
  }
  return m;
}

Region random_cantor(std::mt19937_64& rng) {
  const int k = 1 + static_cast<int>(rng() % 5);
  std::vector<std::string> pieces;
  for (const auto& s : dyadic_cylinders(k)) {
    if (rng() % 2) pieces.push_back(s);
  }
  return Region::cantor(pieces, kD);
}

// Dyadic arcs with endpoints on the 1/64 lattice, so membership at cell
// midpoints is exact.
Region random_arcs(std::mt19937_64& rng) {
  std::vector<Interval> iv;
  int at = static_cast<int>(rng() % 8);
  while (at < 64) {
    const int len = 1 + static_cast<int>(rng() % 10);
    const int hi = std::min(64, at + len);
    iv.push_back({at / 64.0, hi / 64.0});
    at = hi + 1 + static_cast<int>(rng() % 10);
  }
  return Region::circle(iv);
}

std::bitset<64> arc_members(const Region& r) {
  std::bitset<64> m;
  for (int i = 0; i < 64; ++i) m[i] = contains(r, CirclePoint{(i + 0.5) / 64.0});
  return m;
}

}  // namespace

TEST_CASE("normalize examples") {
  const Region r = Region::circle({{0.1, 0.2}, {0.2, 0.3}});
  REQUIRE(r.intervals.size() == 1);
  CHECK(r.intervals[0].lo == 0.1);
  CHECK(r.intervals[0].hi == 0.3);
  CHECK_THROWS_AS(Region::cantor({"10", "1"}, 4), DomainError);
  CHECK(Region::circle({}).is_empty());
  CHECK_THROWS_AS(Region::circle({{0.1, 0.4}, {0.3, 0.5}}), DomainError);
  CHECK_THROWS_AS(Region::torus({{0, 0.5, 0, 0.5}, {0.25, 0.75, 0.25, 0.75}}), DomainError);
}

TEST_CASE("wrapping arcs split at zero") {
  const Region r = Region::circle({{0.9, 0.1}});
  REQUIRE(r.intervals.size() == 2);
  CHECK(reference_measure(r) == doctest::Approx(0.2));
  const auto comps = circle_components(r);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].length == doctest::Approx(0.2));
  CHECK(comps[0].start == doctest::Approx(0.9));
}

TEST_CASE("symmetric difference examples") {
  const auto sd = region_symdiff(Region::circle({{0, 0.5}}), Region::circle({{0.1, 0.6}}));
  REQUIRE(sd.region.intervals.size() == 2);
  CHECK(sd.region.intervals[0] == Interval{0.0, 0.1});
  CHECK(sd.region.intervals[1] == Interval{0.5, 0.6});
  CHECK(sd.components.size() == 2);
  CHECK(sd.max_diameter == doctest::Approx(0.1).epsilon(1e-12));
  const Region a = Region::circle({{0.2, 0.7}});
  CHECK(region_symdiff(a, a).region.is_empty());
  const auto c = region_symdiff(Region::cantor({"0"}, 8), Region::cantor({"00"}, 8)).region;
  CHECK(c.cylinders == std::vector<std::string>{"01"});
  CHECK_THROWS_AS(region_symdiff(a, Region::cantor({"0"}, 8)), SpaceMismatch);
}

TEST_CASE("measure examples") {
  const auto leb = PartitionMeasure::reference(SpaceKind::kCircle);
  CHECK(region_measure(Region::circle({{0, 0.25}, {0.5, 0.75}}), leb) == 0.5);
  CHECK(reference_measure(Region::cantor({"101"}, 8)) == 0.125);
  CHECK(reference_measure(Region::whole(RegionKind::kCircleIntervals)) == 1.0);
  CHECK(reference_measure(Region::whole(RegionKind::kTorusRects)) == 1.0);
  CHECK(reference_measure(Region::whole(RegionKind::kCantorCylinders, 8)) == 1.0);
}

TEST_CASE("partition measures") {
  const auto pm = PartitionMeasure::from_cells(
      {{Region::circle({{0, 0.5}}), 0.8}, {Region::circle({{0.5, 1.0}}), 0.2}});
  CHECK(region_measure(Region::circle({{0, 0.25}}), pm) == doctest::Approx(0.4));
  CHECK(region_measure(Region::circle({{0.25, 0.75}}), pm) == doctest::Approx(0.5));
  CHECK(pm.density(CirclePoint{0.1}) == doctest::Approx(1.6));
  CHECK_THROWS_AS(PartitionMeasure::from_cells({{Region::circle({{0, 0.5}}), 1.0}}), DomainError);
  CHECK_THROWS_AS(
      PartitionMeasure::from_cells({{Region::circle({{0, 0.5}}), 0.7}, {Region::circle({{0.5, 1.0}}), 0.2}}),
      DomainError);
}

TEST_CASE("pushforward examples") {
  const Region r = region_pushforward(TransformSpec::rotation(DoubleDouble(0.25)), 1, Region::circle({{0, 0.5}}));
  CHECK(r == Region::circle({{0.25, 0.75}}));
  const auto odo = TransformSpec::odometer(8);
  const Region z = Region::cantor({"0"}, 8);
  CHECK(region_pushforward(odo, 2, z) == z);
  const Region arc = Region::circle({{0.3, 0.45}});
  CHECK(region_pushforward(TransformSpec::rotation(golden_conjugate()), 0, arc) == arc);
  CHECK_THROWS_AS(region_pushforward(TransformSpec::toral(kCatMap), 1, Region::torus({{0, 0.5, 0, 1}})),
                  UnsupportedExact);
  CHECK_THROWS_AS(region_pushforward(TransformSpec::twist(3), 1, Region::torus({{0, 0.5, 0, 1}})), UnsupportedExact);
}

TEST_CASE("odometer T^2 on cylinder 0 by enumeration at D = 8") {
  const auto odo = TransformSpec::odometer(8);
  for (std::uint64_t x = 0; x < 256; ++x) {
    const bool in = (x & 1u) == 0;
    const auto y = iterate(odo, 2, CantorPoint{x, 8}).cantor();
    CHECK(((y.bits & 1u) == 0) == in);
  }
}

TEST_CASE("cantor region operations agree with enumeration") {
  std::mt19937_64 rng(17);
  const auto odo = TransformSpec::odometer(kD);
  for (int t = 0; t < 60; ++t) {
    const Region a = random_cantor(rng);
    const Region b = random_cantor(rng);
    const Members ma = enumerate_prefixes(a.cylinders), mb = enumerate_prefixes(b.cylinders);
    CHECK(enumerate(a) == ma);
    CHECK(enumerate(region_union(a, b)) == (ma | mb));
    CHECK(enumerate(region_intersection(a, b)) == (ma & mb));
    CHECK(enumerate(region_difference(a, b)) == (ma & ~mb));
    CHECK(enumerate(region_complement(a)) == ~ma);
    CHECK(enumerate(region_symdiff(a, b).region) == (ma ^ mb));
    CHECK(reference_measure(a) == static_cast<double>(ma.count()) / (1 << kD));
    const auto n = static_cast<std::int64_t>(rng() % 3000) - 1500;
    Members img;
    for (std::uint64_t x = 0; x < (1u << kD); ++x) {
      if (ma[x]) img[(x + static_cast<std::uint64_t>(n)) & ((1u << kD) - 1)] = true;
    }
    CHECK(enumerate(region_pushforward(odo, n, a)) == img);
  }
}

TEST_CASE("circle region operations agree with lattice membership") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const Region a = random_arcs(rng), b = random_arcs(rng);
    const auto ma = arc_members(a), mb = arc_members(b);
    CHECK(arc_members(region_union(a, b)) == (ma | mb));
    CHECK(arc_members(region_intersection(a, b)) == (ma & mb));
    CHECK(arc_members(region_difference(a, b)) == (ma & ~mb));
    CHECK(arc_members(region_complement(a)) == ~ma);
    CHECK(arc_members(region_symdiff(a, b).region) == (ma ^ mb));
    CHECK(reference_measure(a) == static_cast<double>(ma.count()) / 64.0);
    // mu(a symdiff b) = mu(a) + mu(b) - 2 mu(a cap b), exact on dyadics.
    CHECK(reference_measure(region_symdiff(a, b).region) ==
          reference_measure(a) + reference_measure(b) - 2 * reference_measure(region_intersection(a, b)));
    CHECK(region_symdiff(a, b).region == region_symdiff(b, a).region);
  }
}

TEST_CASE("torus rectangles agree with lattice membership") {
  std::mt19937_64 rng(29);
  auto rnd_rects = [&] {
    std::vector<Rect> rs;
    for (int x = 0; x < 8; x += 2) {
      if (rng() % 2) {
        const int y0 = static_cast<int>(rng() % 6);
        rs.push_back({x / 8.0, (x + 1 + static_cast<int>(rng() % 2)) / 8.0, y0 / 8.0, (y0 + 2) / 8.0});
      }
    }
    return Region::torus(rs);
  };
  auto members = [](const Region& r) {
    std::bitset<64> m;
    for (int i = 0; i < 64; ++i) m[i] = contains(r, TorusPoint{(i % 8 + 0.5) / 8, (i / 8 + 0.5) / 8});
    return m;
  };
  for (int t = 0; t < 100; ++t) {
    const Region a = rnd_rects(), b = rnd_rects();
    const auto ma = members(a), mb = members(b);
    CHECK(members(region_union(a, b)) == (ma | mb));
    CHECK(members(region_intersection(a, b)) == (ma & mb));
    CHECK(members(region_difference(a, b)) == (ma & ~mb));
    CHECK(members(region_complement(a)) == ~ma);
    CHECK(reference_measure(region_union(a, b)) == static_cast<double>((ma | mb).count()) / 64.0);
  }
}

TEST_CASE("rotation pushforward preserves measure") {
  std::mt19937_64 rng(31);
  const auto rot = TransformSpec::rotation(golden_conjugate());
  for (int t = 0; t < 100; ++t) {
    const Region a = random_arcs(rng);
    const auto n = static_cast<std::int64_t>(rng() % 20001) - 10000;
    CHECK(reference_measure(region_pushforward(rot, n, a)) == doctest::Approx(reference_measure(a)).epsilon(1e-12));
  }
}

TEST_CASE("region JSON round trip") {
  const Region c = Region::circle({{0.9, 0.1}, {0.3, 0.4}});
  CHECK(region_from_json(region_to_json(c)) == c);
  const Region t = Region::torus({{0, 0.5, 0, 1}});
  CHECK(region_from_json(region_to_json(t)) == t);
  const Region k = Region::cantor({"01", "1"}, 12);
  const auto j = region_to_json(k);
  CHECK(j["depth"] == 12);
  CHECK(region_from_json(j) == k);
  CHECK_THROWS_AS(region_from_json(nlohmann::json{{"kind", "polygon"}, {"components", nlohmann::json::array()}}),
                  DomainError);
}
