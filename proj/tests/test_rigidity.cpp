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
#include "rigidlab/rigidity.hpp"

using namespace rigidlab;
using Dec = boost::multiprecision::cpp_dec_float_50;

namespace {

Dec golden_dec() { return (boost::multiprecision::sqrt(Dec(5)) - 1) / 2; }
Dec silver_dec() { return boost::multiprecision::sqrt(Dec(2)) - 1; }

double dist_dec(const Dec& alpha, std::int64_t n) {
  const Dec x = alpha * n;
  const Dec f = x - boost::multiprecision::floor(x);
  return (f < Dec(0.5) ? f : Dec(1) - f).convert_to<double>();
}

// sup_x d(x + n, x) over all 2^D strings, from the bit patterns directly.
double odometer_brute(std::int64_t n, int depth) {
  const std::uint64_t mask = (std::uint64_t{1} << depth) - 1;
  double worst = 0.0;
  for (std::uint64_t x = 0; x <= mask; ++x) {
    const std::uint64_t diff = ((x + static_cast<std::uint64_t>(n)) & mask) ^ x;
    if (diff == 0) continue;
    int pos = 1;
    while (!((diff >> (pos - 1)) & 1u)) ++pos;
    worst = std::max(worst, std::ldexp(1.0, -pos));
  }
  return worst;
}

}  // namespace

TEST_CASE("uniform rigidity modulus examples") {
  const auto rot = TransformSpec::rotation(golden_conjugate());
  CHECK(std::fabs(uniform_rigidity_modulus(rot, 13, GridPlan{}) - dist_dec(golden_dec(), 13)) < 1e-15);
  CHECK(uniform_rigidity_modulus(TransformSpec::odometer(10), 8, GridPlan{}) == 0.0625);
  const double tw = uniform_rigidity_modulus(TransformSpec::twist(10), 1, GridPlan{1000, std::nullopt});
  CHECK(tw <= 0.1);
  CHECK(tw >= 0.1 - 1e-3);
  CHECK_THROWS_AS(uniform_rigidity_modulus(rot, 0, GridPlan{}), DomainError);
  CHECK_THROWS_AS(uniform_rigidity_modulus(TransformSpec::twist(3), 1, GridPlan{1, std::nullopt}), DomainError);
}

TEST_CASE("odometer modulus formula matches brute force") {
  for (int d : {4, 8, 12}) {
    for (std::int64_t n = 1; n <= (std::int64_t{1} << d); ++n) {
      CHECK(odometer_modulus(n, d) == odometer_brute(n, d));
    }
  }
  CHECK(odometer_modulus(1024, 10) == 0.0);
}

TEST_CASE("grid sweep of a rotation equals ||n alpha||") {
  const auto rot = TransformSpec::rotation(golden_conjugate());
  for (std::int64_t n = 1; n <= 10000; n += 97) {
    for (int res : {2, 17}) {
      CHECK(std::fabs(grid_sweep_modulus(rot, n, GridPlan{res, std::nullopt}) - dist_dec(golden_dec(), n)) < 1e-9);
    }
  }
}

TEST_CASE("serial and parallel sweeps agree") {
  const auto cat = TransformSpec::toral(kCatMap);
  const GridPlan g{200, 5};
  CHECK(grid_sweep_modulus(cat, 3, g, Exec::kSerial) == grid_sweep_modulus(cat, 3, g, Exec::kParallel));
}

TEST_CASE("rigidity defect examples") {
  const auto leb = PartitionMeasure::reference(SpaceKind::kCircle);
  const auto rot = TransformSpec::rotation(golden_conjugate());
  std::vector<Region> dyadic;
  for (int i = 0; i < 16; ++i) dyadic.push_back(Region::circle({{i / 16.0, (i + 1) / 16.0}}));
  const DefectResult d = rigidity_defect(rot, 13, dyadic, leb, std::nullopt);
  CHECK(d.exact);
  CHECK(d.value == doctest::Approx(2 * dist_dec(golden_dec(), 13)).epsilon(1e-12));

  const auto odo = TransformSpec::odometer(8);
  const auto cmu = PartitionMeasure::reference(SpaceKind::kCantor, 8);
  const std::vector<Region> halves{Region::cantor({"0"}, 8), Region::cantor({"1"}, 8)};
  CHECK(rigidity_defect(odo, 256, halves, cmu, std::nullopt).value == 0.0);
  CHECK(rigidity_defect(odo, 2, halves, cmu, std::nullopt).value == 0.0);
  CHECK(rigidity_defect(odo, 1, halves, cmu, std::nullopt).value == 1.0);

  const auto cat = TransformSpec::toral(kCatMap);
  const std::vector<Region> half{Region::torus({{0, 0.5, 0, 1}})};
  const auto tmu = PartitionMeasure::reference(SpaceKind::kTorus);
  CHECK_THROWS_AS(rigidity_defect(cat, 1, half, tmu, std::nullopt), DomainError);
  const DefectResult mc = rigidity_defect(cat, 1, half, tmu, MonteCarloPlan{3, 200000});
  CHECK_FALSE(mc.exact);
  // mu(A symdiff T A) = 2 (mu(A) - mu(A cap T^-1 A)) = 2 (1/2 - 1/4) = 1/2.
  CHECK(std::fabs(mc.value - 0.5) < 4 * mc.stderr + 1e-3);
}

TEST_CASE("symmetric difference of an arc is bounded by twice the modulus") {
  const auto rot = TransformSpec::rotation(golden_conjugate());
  const auto leb = PartitionMeasure::reference(SpaceKind::kCircle);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    const double lo = static_cast<double>(rng() % 1000) / 1000.0;
    const double len = 0.001 + static_cast<double>(rng() % 900) / 1000.0;
    const Region a = Region::circle({{lo, std::fmod(lo + len, 1.0)}});
    const auto n = static_cast<std::int64_t>(1 + rng() % 5000);
    const double defect = rigidity_defect(rot, n, {a}, leb, std::nullopt).value;
    CHECK(defect <= 2 * uniform_rigidity_modulus(rot, n, GridPlan{}) + 1e-12);
  }
}

TEST_CASE("convergent denominators") {
  const auto g = convergent_denominators(golden_conjugate(), 7);
  CHECK(g.terms == std::vector<std::int64_t>{1, 2, 3, 5, 8, 13, 21});
  CHECK(g.provenance == SequenceProvenance::kContinuedFraction);
  const auto s = convergent_denominators(silver_conjugate(), 5);
  CHECK(s.terms == std::vector<std::int64_t>{1, 2, 5, 12, 29});
  CHECK(convergent_denominators(golden_conjugate(), 1).terms == std::vector<std::int64_t>{1});
  const auto r = convergent_denominators(DoubleDouble(0.375), 10);
  CHECK(r.terminated);
  CHECK(r.terms == std::vector<std::int64_t>{1, 2, 3, 8});
  CHECK(convergent_denominators(DoubleDouble(0.4), 10).terms == std::vector<std::int64_t>{1, 2, 5});
  CHECK(convergent_denominators(DoubleDouble(1.0) / DoubleDouble(3.0), 10).terms == std::vector<std::int64_t>{1, 3});
  CHECK(continued_fraction_terms(DoubleDouble(0.375), 10) == std::vector<std::int64_t>{0, 2, 1, 2});
  CHECK(TransformSpec::rotation(DoubleDouble(0.375)).rational_alpha());
  CHECK_FALSE(TransformSpec::rotation(golden_conjugate()).rational_alpha());
}

TEST_CASE("convergents are best approximations and satisfy the bound") {
  for (const auto& [alpha, dec] : {std::pair{golden_conjugate(), golden_dec()}, std::pair{silver_conjugate(), silver_dec()}}) {
    const auto q = convergent_denominators(alpha, 12);
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
      const double dq = dist_dec(dec, q.terms[k]);
      CHECK(dq < 1.0 / static_cast<double>(q.terms[k + 1]));
      for (std::int64_t p = 1; p < q.terms[k]; ++p) CHECK(dist_dec(dec, p) > dq);
    }
  }
}

TEST_CASE("greedy rigidity sequence search") {
  const auto rot = TransformSpec::rotation(golden_conjugate());
  const auto a = find_rigidity_sequence(rot, {0.1, 0.06, 0.04}, 30, GridPlan{});
  CHECK(a.terms == std::vector<std::int64_t>{5, 8, 13});
  CHECK_FALSE(a.shortfall);
  const auto b = find_rigidity_sequence(TransformSpec::odometer(16), {0.3, 0.2, 0.1}, 20, GridPlan{});
  CHECK(b.terms == std::vector<std::int64_t>{2, 4, 8});
  const auto c = find_rigidity_sequence(TransformSpec::twist(3), {0.01}, 10, GridPlan{64, std::nullopt});
  CHECK(c.shortfall);
  CHECK(c.terms.empty());
}

TEST_CASE("density profiles") {
  const auto fib = convergent_denominators(golden_conjugate(), 60);
  const auto p = density_profile(fib, 1000000, 13);
  CHECK(p.counts.back() == 29);
  CHECK(p.final_density() == doctest::Approx(2.9e-5));
  for (std::size_t i = 2; i < p.densities.size(); ++i) CHECK(p.densities[i] <= p.densities[i - 1]);
  std::vector<std::int64_t> all(1000);
  for (int i = 0; i < 1000; ++i) all[i] = i + 1;
  const auto full = density_profile(RigiditySequence::user(all), 1000, 5);
  for (double d : full.densities) CHECK(d == 1.0);
  const auto pw = density_profile(powers_of_two(1, 20), 1 << 20, 10);
  CHECK(pw.final_density() == doctest::Approx(20.0 / (1 << 20)));
  for (std::size_t i = 2; i < pw.densities.size(); ++i) CHECK(pw.densities[i] <= pw.densities[i - 1]);
  for (std::size_t i = 1; i < pw.counts.size(); ++i) CHECK(pw.counts[i] >= pw.counts[i - 1]);
  CHECK_THROWS_AS(RigiditySequence::user({3, 2}), DomainError);
  CHECK_THROWS_AS(RigiditySequence::user({}), DomainError);
}

TEST_CASE("egorov construction on the golden rotation") {
  const auto rot = TransformSpec::rotation(golden_conjugate());
  const auto leb = PartitionMeasure::reference(SpaceKind::kCircle);
  const auto seq = convergent_denominators(golden_conjugate(), 40);
  const EgorovResult r = egorov_bad_set(rot, leb, 0.1, 8, seq, GridPlan{12000, std::nullopt});
  CHECK(r.verified);
  CHECK(r.bad_measure < 0.1);
  CHECK(r.bad_measure == reference_measure(r.bad_set));
  CHECK(r.checked_points >= 10000);
  REQUIRE(r.schedule.size() == 8);
  for (const auto& l : r.schedule) {
    CHECK(l.symdiff_mass < l.budget);
    CHECK(l.max_sampled_displacement < l.displacement_bound);
  }
  // Independent check off B: every lattice point outside B meets every level.
  const GridPlan g{3000, 77};
  for (std::size_t i = 0; i < 3000; ++i) {
    const Point x = grid_point(g, SpaceKind::kCircle, 0, i);
    if (contains(r.bad_set, x)) continue;
    for (const auto& l : r.schedule) CHECK(metric_distance(iterate(rot, l.n, x), x) < l.displacement_bound);
  }
}

TEST_CASE("egorov on the odometer and error cases") {
  const auto odo = TransformSpec::odometer(12);
  const auto cmu = PartitionMeasure::reference(SpaceKind::kCantor, 12);
  const EgorovResult r = egorov_bad_set(odo, cmu, 0.5, 3, RigiditySequence::user({2, 4, 8}), GridPlan{});
  CHECK(r.bad_measure == 0.0);
  CHECK(r.bad_set.is_empty());
  const auto rot = TransformSpec::rotation(golden_conjugate());
  const auto leb = PartitionMeasure::reference(SpaceKind::kCircle);
  CHECK_THROWS_AS(egorov_bad_set(rot, leb, 1.0, 3, RigiditySequence::user({1}), GridPlan{}), DomainError);
  try {
    egorov_bad_set(rot, leb, 0.1, 4, RigiditySequence::user({1, 2, 3}), GridPlan{});
    FAIL("expected a shortfall");
  } catch (const EgorovShortfall& e) {
    CHECK(e.level() == 1);
    CHECK(e.budget() == doctest::Approx(0.025));
  }
}

TEST_CASE("component diagnostic") {
  const auto rot = TransformSpec::rotation(golden_conjugate());
  const Region a = Region::circle({{0, 0.5}});
  for (std::int64_t n : {5, 8, 13}) {
    const auto c = symdiff_component_diagnostic(rot, a, n);
    CHECK(c.component_count == 2);
    CHECK(std::fabs(c.max_diameter - dist_dec(golden_dec(), n)) < 1e-12);
  }
  const auto z = symdiff_component_diagnostic(rot, a, 0);
  CHECK(z.component_count == 0);
  CHECK(z.max_diameter == 0.0);
  const auto h = symdiff_component_diagnostic(TransformSpec::rotation(DoubleDouble(0.25)), a, 2);
  CHECK(h.component_count == 2);
  CHECK(h.max_diameter == 0.5);
  CHECK_THROWS_AS(symdiff_component_diagnostic(TransformSpec::odometer(4), Region::cantor({"0"}, 4), 1), DomainError);
}
