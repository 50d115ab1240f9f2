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

#include "doctest.h"
#include "rigidlab/cantor.hpp"

using namespace rigidlab;

namespace {

// Depth-m balls that x -> x + n maps onto themselves, by enumerating all
// strings at depth D.
std::uint64_t invariant_balls_brute(std::int64_t n, int m, int depth) {
  const std::uint64_t mask = (std::uint64_t{1} << depth) - 1;
  const std::uint64_t low = (std::uint64_t{1} << m) - 1;
  std::uint64_t count = 0;
  for (std::uint64_t ball = 0; ball <= low; ++ball) {
    bool fixed = true;
    for (std::uint64_t x = ball; x <= mask && fixed; x += low + 1) {
      fixed = (((x + static_cast<std::uint64_t>(n)) & mask) & low) == ball;
    }
    count += fixed;
  }
  return count;
}

}  // namespace

TEST_CASE("ball depth for a radius") {
  CHECK(ball_depth_for_radius(1.0) == 0);
  CHECK(ball_depth_for_radius(0.125) == 3);
  CHECK(ball_depth_for_radius(0.1) == 4);
  CHECK_THROWS(ball_depth_for_radius(0.0));
}

TEST_CASE("ball invariance examples") {
  const auto odo = TransformSpec::odometer(16);
  auto r = ball_invariance_check(odo, 3, 8);
  CHECK(r.invariant_count == 8);
  CHECK(r.total_balls == 8);
  r = ball_invariance_check(odo, 3, 1);
  CHECK(r.invariant_count == 0);
  r = ball_invariance_check(odo, 0, 5);
  CHECK(r.invariant_count == 1);
  CHECK(r.total_balls == 1);
  CHECK_THROWS(ball_invariance_check(TransformSpec::rotation(golden_conjugate()), 2, 1));
  CHECK_THROWS(ball_invariance_check(odo, 17, 1));
}

TEST_CASE("ball invariance agrees with enumeration") {
  const auto odo = TransformSpec::odometer(8);
  for (int m = 0; m <= 5; ++m) {
    for (std::int64_t n = -20; n <= 40; ++n) {
      CHECK(ball_invariance_check(odo, m, n, Exec::kSerial).invariant_count == invariant_balls_brute(n, m, 8));
    }
  }
}

TEST_CASE("invariant cylinder search") {
  const auto odo = TransformSpec::odometer(16);
  const auto two = invariant_cylinder_search(odo, 2, 1);
  REQUIRE(two.has_value());
  CHECK(two->cylinders == std::vector<std::string>{"0"});
  CHECK(reference_measure(*two) == 0.5);
  CHECK_FALSE(invariant_cylinder_search(odo, 3, 4).has_value());
  const auto id = invariant_cylinder_search(odo, std::int64_t{1} << 16, 4);
  REQUIRE(id.has_value());
  CHECK(id->cylinders == std::vector<std::string>{"0"});
  // p = 4 at depth 1 already leaves "0" fixed.
  const auto four = invariant_cylinder_search(odo, 4, 8);
  REQUIRE(four.has_value());
  CHECK(reference_measure(*four) == 0.5);
  for (std::int64_t p = 2; p <= 40; ++p) {
    const auto r = invariant_cylinder_search(odo, p, 6);
    if (!r) {
      CHECK(p % 2 == 1);
      continue;
    }
    const double mu = reference_measure(*r);
    CHECK(mu > 0.0);
    CHECK(mu < 1.0);
    CHECK(region_pushforward(odo, p, *r) == *r);
  }
  CHECK_THROWS(invariant_cylinder_search(odo, 1, 4));
}

TEST_CASE("uniform rigidity forces invariant balls") {
  const auto odo = TransformSpec::odometer(16);
  const auto d2 = uniform_rigidity_implies_invariance_demo(odo, RigiditySequence::user({2, 4, 8, 16}), 2);
  CHECK(d2.conclusive);
  // 2^{-(v2(4)+1)} = 1/8 < 1/4, so n = 4 is the first qualifying term.
  CHECK(d2.first_n == 4);
  CHECK(d2.implication_holds);
  REQUIRE(!d2.checks.empty());
  CHECK(d2.checks.front().invariant_count == 4);
  const auto d0 = uniform_rigidity_implies_invariance_demo(odo, RigiditySequence::user({2, 4}), 0);
  CHECK(d0.first_n == 2);
  const auto d3 = uniform_rigidity_implies_invariance_demo(odo, RigiditySequence::user({2}), 3);
  CHECK_FALSE(d3.conclusive);
  const auto seq = powers_of_two(1, 16);
  for (int m = 0; m <= 8; ++m) CHECK(uniform_rigidity_implies_invariance_demo(odo, seq, m).implication_holds);
}

TEST_CASE("ultrametric implication over all n at depth 10") {
  const auto odo = TransformSpec::odometer(10);
  for (std::int64_t n = 1; n <= 1024; ++n) {
    const double mod = odometer_modulus(n, 10);
    for (int m = 0; m <= 6; ++m) {
      if (mod < std::ldexp(1.0, -m)) {
        CHECK(invariant_balls_brute(n, m, 10) == (std::uint64_t{1} << m));
      }
    }
  }
  (void)odo;
}

TEST_CASE("odometer is uniformly rigid along 2^k and not totally ergodic") {
  const auto odo = TransformSpec::odometer(20);
  for (int k = 1; k <= 12; ++k) CHECK(uniform_rigidity_modulus(odo, std::int64_t{1} << k, GridPlan{}) == std::ldexp(1.0, -(k + 1)));
  CHECK(invariant_cylinder_search(odo, 2, 3).has_value());
}
