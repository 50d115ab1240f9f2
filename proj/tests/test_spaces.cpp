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

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "doctest.h"
#include "rigidlab/error.hpp"
#include "rigidlab/spaces.hpp"

using namespace rigidlab;
using Dec = boost::multiprecision::cpp_dec_float_50;

namespace {

double torus_gap(const TorusPoint& a, const TorusPoint& b) { return metric_distance(Point(a), Point(b)); }

// Plain n-fold composition of apply.
Point step_n(const TransformSpec& s, int n, Point p) {
  for (int i = 0; i < n; ++i) p = apply(s, p);
  return p;
}

}  // namespace

TEST_CASE("metric examples") {
  CHECK(metric_distance(CirclePoint{0.9}, CirclePoint{0.05}) == doctest::Approx(0.15).epsilon(1e-14));
  const auto a = CantorPoint::from_string("1010");
  const auto b = CantorPoint::from_string("1000");
  CHECK(metric_distance(a, b) == 0.125);
  CHECK(metric_distance(TorusPoint{0, 0}, TorusPoint{0, 0}) == 0.0);
  CHECK(metric_distance(TorusPoint{0.1, 0.95}, TorusPoint{0.2, 0.05}) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK_THROWS_AS(metric_distance(CirclePoint{0.1}, TorusPoint{0.1, 0.1}), SpaceMismatch);
}

TEST_CASE("cantor strings round trip with position 1 first") {
  const auto p = CantorPoint::from_string("1100");
  CHECK(p.depth == 4);
  CHECK(p.bit(1) == 1);
  CHECK(p.bit(3) == 0);
  CHECK(p.to_string() == "1100");
  CHECK_THROWS(CantorPoint::from_string("10x"));
  CHECK_THROWS(CantorPoint::from_string(""));
}

TEST_CASE("cantor metric is an ultrametric") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 2000; ++t) {
    const CantorPoint a{rng() & 0xff, 8}, b{rng() & 0xff, 8}, c{rng() & 0xff, 8};
    CHECK(metric_distance(a, c) <= std::max(metric_distance(a, b), metric_distance(b, c)));
  }
}

TEST_CASE("apply examples") {
  const auto tw = apply(TransformSpec::twist(4), TorusPoint{0.5, 0.5}).torus();
  CHECK(tw.x == 0.625);
  CHECK(tw.y == 0.5);
  const auto odo = apply(TransformSpec::odometer(4), CantorPoint::from_string("1110")).cantor();
  CHECK(odo.to_string() == "0001");
  const auto cat = apply(TransformSpec::toral(kCatMap), TorusPoint{0.5, 0.5}).torus();
  CHECK(cat.x == 0.5);
  CHECK(cat.y == 0.0);
  CHECK_THROWS_AS(apply(TransformSpec::twist(2), CirclePoint{0.1}), SpaceMismatch);
}

TEST_CASE("iterate examples") {
  const auto rot = TransformSpec::rotation(golden_conjugate());
  const Dec alpha = (boost::multiprecision::sqrt(Dec(5)) - 1) / 2;
  const double oracle = (alpha * 5 - 3).convert_to<double>();
  CHECK(std::fabs(iterate(rot, 5, CirclePoint{0.0}).circle().x - oracle) < 1e-15);
  CHECK(iterate(TransformSpec::odometer(4), 4, CantorPoint::from_string("1100")).cantor().to_string() == "1110");
  const Point p = TorusPoint{0.3, 0.7};
  CHECK(iterate(TransformSpec::toral(kCatMap), 0, p) == p);
  CHECK(iterate(rot, 0, CirclePoint{0.4}) == Point(CirclePoint{0.4}));
}

TEST_CASE("spec invariants are checked at construction") {
  CHECK_THROWS_AS(TransformSpec::toral(Matrix2{2, 0, 0, 1}), DomainError);
  CHECK_THROWS_AS(TransformSpec::twist(0), DomainError);
  CHECK_THROWS_AS(TransformSpec::word({TransformSpec::twist(2)}, {{1, 1}}), DomainError);
  CHECK_THROWS_AS(TransformSpec::word({TransformSpec::twist(2), TransformSpec::odometer(4)}, {}), SpaceMismatch);
  CHECK_NOTHROW(TransformSpec::toral(Matrix2{0, 1, 1, 0}));  // det -1
}

TEST_CASE("fast paths agree with stepwise composition") {
  const auto odo = TransformSpec::odometer(6);
  for (std::uint64_t b = 0; b < 64; ++b) {
    for (int n = 0; n < 70; n += 7) CHECK(iterate(odo, n, CantorPoint{b, 6}) == step_n(odo, n, CantorPoint{b, 6}));
  }
  const auto rot = TransformSpec::rotation(golden_conjugate());
  for (int n = 0; n < 200; n += 13) {
    const double d = metric_distance(iterate(rot, n, CirclePoint{0.2}), step_n(rot, n, CirclePoint{0.2}));
    CHECK(d < 1e-12);
  }
  const auto cat = TransformSpec::toral(kCatMap);
  for (int n = 1; n < 8; ++n) {
    CHECK(torus_gap(iterate(cat, n, TorusPoint{0.25, 0.625}).torus(),
                    step_n(cat, n, TorusPoint{0.25, 0.625}).torus()) < 1e-15);
  }
}

TEST_CASE("group property of iterate") {
  const auto odo = TransformSpec::odometer(10);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const CantorPoint p{rng() & 1023, 10};
    const auto a = static_cast<std::int64_t>(rng() % 5000) - 2500;
    const auto b = static_cast<std::int64_t>(rng() % 5000) - 2500;
    CHECK(iterate(odo, a + b, p) == iterate(odo, b, iterate(odo, a, p)));
    CHECK(iterate(odo, -a, iterate(odo, a, p)) == Point(p));
  }
  const auto rot = TransformSpec::rotation(golden_conjugate());
  for (int t = 0; t < 300; ++t) {
    const CirclePoint p{static_cast<double>(rng() >> 11) * 0x1.0p-53};
    const auto a = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
    const auto b = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
    CHECK(metric_distance(iterate(rot, a + b, p), iterate(rot, b, iterate(rot, a, p))) < 1e-12);
  }
}

TEST_CASE("rational torus points iterate exactly") {
  const auto cat = TransformSpec::toral(kCatMap);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const std::uint64_t q = 2 + rng() % 1000;
    const RationalTorusPoint p{rng() % q, rng() % q, q};
    const auto a = static_cast<std::int64_t>(rng() % 200) - 100;
    const auto b = static_cast<std::int64_t>(rng() % 200) - 100;
    CHECK(iterate_rational(cat, a + b, p) == iterate_rational(cat, b, iterate_rational(cat, a, p)));
    CHECK(iterate_rational(cat, -a, iterate_rational(cat, a, p)) == p);
  }
  // The cat map on (1/5)-points: period of (1/5, 0) divides the order of
  // the matrix mod 5, which is 10.
  const RationalTorusPoint p{1, 0, 5};
  CHECK(iterate_rational(cat, 10, p) == p);
  // Matches the step-by-step integer action.
  RationalTorusPoint s = p;
  for (int i = 0; i < 7; ++i) s = {(2 * s.px + s.py) % 5, (s.px + s.py) % 5, 5};
  CHECK(iterate_rational(cat, 7, p) == s);
}

TEST_CASE("cat map does not collapse in floating point") {
  // Stepwise double iteration of a hyperbolic map loses a bit per step and
  // lands on (0, 0) after ~60 steps; the fixed-point path keeps orbits.
  const auto cat = TransformSpec::toral(kCatMap);
  const Point p = TorusPoint{0.1234567, 0.7654321};
  const auto far = iterate(cat, 200, p).torus();
  CHECK((far.x != 0.0 || far.y != 0.0));
  // Rounding the state to a double and running backwards amplifies the
  // error by lambda^n, so the round trip is only checked at short range.
  CHECK(torus_gap(iterate(cat, -10, iterate(cat, 10, p)).torus(), p.torus()) < 1e-9);
}

TEST_CASE("matrix power mod 2^64") {
  const auto m3 = matrix_power_mod64(kCatMap, 3);
  // [[2,1],[1,1]]^3 = [[13,8],[8,5]]
  CHECK(m3[0] == 13);
  CHECK(m3[1] == 8);
  CHECK(m3[2] == 8);
  CHECK(m3[3] == 5);
  const auto inv = matrix_power_mod64(kCatMap, -1);
  CHECK(inv[0] == 1);
  CHECK(inv[1] == static_cast<std::uint64_t>(-1));
  CHECK(inv[2] == static_cast<std::uint64_t>(-1));
  CHECK(inv[3] == 2);
}

TEST_CASE("product and word specs") {
  const auto prod = TransformSpec::product(TransformSpec::rotation(DoubleDouble(0.25)), TransformSpec::odometer(3));
  const Point p = Point::pair(CirclePoint{0.5}, CantorPoint::from_string("111"));
  const Point q = apply(prod, p);
  CHECK(q.pair().left->circle().x == 0.75);
  CHECK(q.pair().right->cantor().to_string() == "000");
  const auto w = TransformSpec::word({TransformSpec::twist(2), TransformSpec::twist(4)}, {{0, 1}, {1, -1}});
  const auto r = apply(w, TorusPoint{0.0, 0.5}).torus();
  CHECK(r.x == doctest::Approx(0.125));
  CHECK(torus_gap(iterate(w, -1, apply(w, TorusPoint{0.3, 0.9})).torus(), TorusPoint{0.3, 0.9}) < 1e-15);
}
