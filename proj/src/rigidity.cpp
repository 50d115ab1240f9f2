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

#include "rigidlab/rigidity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace rigidlab {

std::string_view to_string(SequenceProvenance p) {
  switch (p) {
    case SequenceProvenance::kContinuedFraction: return "continued_fraction";
    case SequenceProvenance::kGreedyScan: return "greedy_scan";
    case SequenceProvenance::kUserSupplied: return "user_supplied";
  }
  return "unknown";
}

RigiditySequence RigiditySequence::user(std::vector<std::int64_t> terms) {
  if (terms.empty()) throw DomainError("rigidity sequence must be nonempty");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] < 1) throw DomainError("rigidity sequence terms must be positive");
    if (i > 0 && terms[i] <= terms[i - 1]) throw DomainError("rigidity sequence must be strictly increasing");
  }
  RigiditySequence s;
  s.terms = std::move(terms);
  s.provenance = SequenceProvenance::kUserSupplied;
  return s;
}

RigiditySequence powers_of_two(int first_exponent, int last_exponent) {
  if (first_exponent < 0 || last_exponent > 62 || first_exponent > last_exponent) {
    throw DomainError("powers_of_two: exponents must satisfy 0 <= first <= last <= 62");
  }
  std::vector<std::int64_t> t;
  for (int k = first_exponent; k <= last_exponent; ++k) t.push_back(std::int64_t{1} << k);
  return RigiditySequence::user(std::move(t));
}

namespace {

constexpr std::int64_t kDenominatorCap = 1'000'000'000'000;  // 1e12

}  // namespace

std::vector<std::int64_t> continued_fraction_terms(DoubleDouble alpha, std::size_t count) {
  std::vector<std::int64_t> out;
  DoubleDouble y = alpha;
  while (out.size() < count) {
    const DoubleDouble a = dd_floor(y);
    out.push_back(static_cast<std::int64_t>(a.value()));
    y = y - a;
    if (1.0 - y.value() <= 1e-26 * (a.value() + 1.0)) {
      out.back() += 1;
      break;
    }
    if (y.hi <= 1e-28) break;
    y = DoubleDouble(1.0) / y;
  }
  return out;
}

RigiditySequence convergent_denominators(DoubleDouble alpha, std::size_t count) {
  if (count < 1) throw DomainError("convergent_denominators needs count >= 1");
  if (!(alpha.value() > 0.0 && alpha.value() < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  RigiditySequence seq;
  seq.provenance = SequenceProvenance::kContinuedFraction;
  seq.terms.push_back(1);
  std::int64_t q_prev = 0;
  std::int64_t q = 1;
  DoubleDouble y = alpha;  // a_0 = 0
  while (seq.terms.size() < count) {
    // Relative size of the remainder below ~2^-100 means a terminating
    // expansion at this precision.
    if (y.hi <= 1e-28) {
      seq.terminated = true;
      break;
    }
    const DoubleDouble inv = DoubleDouble(1.0) / y;
    DoubleDouble a = dd_floor(inv);
    y = inv - a;
    if (1.0 - y.value() <= 1e-26 * inv.value()) {
      a = a + DoubleDouble(1.0);
      y = DoubleDouble(0.0);
    }
    const double a_val = a.value();
    if (a_val * static_cast<double>(q) > static_cast<double>(kDenominatorCap)) {
      seq.precision_limited = true;
      break;
    }
    const std::int64_t next = static_cast<std::int64_t>(a_val) * q + q_prev;
    q_prev = q;
    q = next;
    if (q > seq.terms.back()) seq.terms.push_back(q);
    // Past ~1e12 the double-double remainder no longer pins the next
    // partial quotient.
    if (q > kDenominatorCap / 1000 && seq.terms.size() < count) {
      seq.precision_limited = true;
      break;
    }
  }
  return seq;
}

double odometer_modulus(std::int64_t n, int depth) {
  if (n == 0) return 0.0;
  const std::uint64_t mag = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  const int v = std::countr_zero(mag);
  if (v >= depth) return 0.0;  // T^n is the identity at this depth
  return std::ldexp(1.0, -(v + 1));
}

double grid_sweep_modulus(const TransformSpec& spec, std::int64_t n, const GridPlan& grid, Exec exec) {
  const SpaceKind space = spec.space();
  const int depth = spec.depth();
  const std::size_t count = grid_size(grid, space, depth);
  const ArgMax best = grid_argmax(
      count,
      [&](std::size_t i) {
        const Point p = grid_point(grid, space, depth, i);
        return metric_distance(iterate(spec, n, p), p);
      },
      exec);
  return std::max(0.0, best.value);
}

double uniform_rigidity_modulus(const TransformSpec& spec, std::int64_t n, const GridPlan& grid, Exec exec) {
  grid.validate();
  if (n < 1) throw DomainError("uniform_rigidity_modulus needs n >= 1");
  switch (spec.kind()) {
    case TransformKind::kRotation: return nearest_integer_distance(spec.alpha(), n);
    case TransformKind::kOdometer: return odometer_modulus(n, spec.depth());
    default: return grid_sweep_modulus(spec, n, grid, exec);
  }
}

DefectResult rigidity_defect(const TransformSpec& spec, std::int64_t n, const std::vector<Region>& family,
                             const PartitionMeasure& measure, const std::optional<MonteCarloPlan>& mc,
                             Exec exec) {
  if (family.empty()) throw DomainError("rigidity_defect needs a nonempty family");
  DefectResult out;
  out.value = -1.0;
  const bool exact = pushforward_is_exact(spec);
  if (!exact && !mc) {
    throw DomainError("rigidity_defect: " + spec.describe() + " has no exact region image; a Monte Carlo plan is required");
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Region& a = family[i];
    Estimate e;
    if (exact) {
      e.value = region_measure(region_symdiff(a, region_pushforward(spec, n, a)).region, measure);
    } else {
      const SpaceKind space = spec.space();
      const int depth = measure.depth();
      // x is in T^n A exactly when T^{-n} x is in A.
      e = mc_mean(
          mc->samples, mc->seed, i,
          [&](std::mt19937_64& rng) {
            const Point x = sample_reference_point(space, depth, rng);
            const bool in_a = contains(a, x);
            const bool in_image = contains(a, iterate(spec, -n, x));
            return in_a != in_image ? measure.density(x) : 0.0;
          },
          exec);
    }
    if (e.value > out.value) {
      out.value = e.value;
      out.stderr = e.stderr;
      out.worst_index = i;
    }
  }
  out.exact = exact;
  return out;
}

RigiditySequence find_rigidity_sequence(const TransformSpec& spec, const std::vector<double>& eps_schedule,
                                        std::int64_t horizon, const GridPlan& grid, Exec exec) {
  if (horizon < 1) throw DomainError("find_rigidity_sequence needs horizon >= 1");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0.0)) throw DomainError("eps schedule entries must be positive");
    if (i > 0 && eps_schedule[i] > eps_schedule[i - 1]) throw DomainError("eps schedule must be decreasing");
  }
  RigiditySequence seq;
  seq.provenance = SequenceProvenance::kGreedyScan;
  std::int64_t n = 1;
  for (double eps : eps_schedule) {
    bool found = false;
    for (; n <= horizon; ++n) {
      if (uniform_rigidity_modulus(spec, n, grid, exec) < eps) {
        seq.terms.push_back(n);
        found = true;
        ++n;
        break;
      }
    }
    if (!found) {
      seq.shortfall = true;
      break;
    }
  }
  return seq;
}

DensityProfile density_profile(const RigiditySequence& seq, std::int64_t horizon, int checkpoints) {
  if (horizon < 1) throw DomainError("density_profile needs N >= 1");
  if (checkpoints < 1) throw DomainError("density_profile needs at least one checkpoint");
  DensityProfile prof;
  prof.horizon = horizon;
  const double log_n = std::log(static_cast<double>(horizon));
  for (int j = 1; j <= checkpoints; ++j) {
    auto c = static_cast<std::int64_t>(std::llround(std::exp(log_n * j / checkpoints)));
    c = std::clamp<std::int64_t>(c, 1, horizon);
    if (j == checkpoints) c = horizon;
    if (prof.checkpoints.empty() || c > prof.checkpoints.back()) prof.checkpoints.push_back(c);
  }
  for (std::int64_t c : prof.checkpoints) {
    const auto k = std::upper_bound(seq.terms.begin(), seq.terms.end(), c) - seq.terms.begin();
    prof.counts.push_back(k);
    prof.densities.push_back(static_cast<double>(k) / static_cast<double>(c));
  }
  return prof;
}

EgorovShortfall::EgorovShortfall(int level, double budget, double best_mass)
    : Error([&] {
        std::ostringstream os;
        os.precision(6);
        os << "egorov_bad_set: sequence exhausted at level m=" << level << ", budget " << budget
           << " unmet (smallest symmetric-difference mass " << best_mass << ")";
        return os.str();
      }()),
      level_(level),
      budget_(budget),
      best_mass_(best_mass) {}

namespace {

std::vector<Region> dyadic_cover(const TransformSpec& spec, int m) {
  std::vector<Region> cover;
  if (spec.space() == SpaceKind::kCircle) {
    const double width = std::ldexp(1.0, -m);
    const std::size_t count = std::size_t{1} << m;
    cover.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      cover.push_back(Region::circle({{static_cast<double>(i) * width, static_cast<double>(i + 1) * width}}));
    }
  } else {
    for (const auto& s : dyadic_cylinders(m)) cover.push_back(Region::cantor({s}, spec.depth()));
  }
  return cover;
}

}  // namespace

EgorovResult egorov_bad_set(const TransformSpec& spec, const PartitionMeasure& measure, double eps, int levels,
                            const RigiditySequence& seq, const GridPlan& grid, Exec exec) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("egorov_bad_set needs 0 < eps < 1");
  if (levels < 1) throw DomainError("egorov_bad_set needs M >= 1");
  if (spec.kind() != TransformKind::kRotation && spec.kind() != TransformKind::kOdometer) {
    throw UnsupportedExact("egorov_bad_set needs an exact region image (rotation or odometer)");
  }
  if (spec.kind() == TransformKind::kOdometer && levels > std::min(spec.depth(), 24)) {
    throw DomainError("egorov_bad_set: levels exceed the cantor depth");
  }
  if (levels > 24) throw DomainError("egorov_bad_set: at most 24 levels");
  if (seq.terms.empty()) throw DomainError("egorov_bad_set needs a nonempty sequence");
  if (measure.space() != spec.space()) throw SpaceMismatch("measure and transformation live in different spaces");

  EgorovResult res;
  res.eps = eps;
  res.depth = levels;
  const RegionKind kind = spec.space() == SpaceKind::kCircle ? RegionKind::kCircleIntervals
                                                             : RegionKind::kCantorCylinders;
  res.bad_set = Region::empty(kind, spec.depth());
  std::size_t start = 0;
  for (int m = 1; m <= levels; ++m) {
    const std::vector<Region> cover = dyadic_cover(spec, m);
    Region covered = Region::empty(kind, spec.depth());
    for (const auto& b : cover) covered = region_union(covered, b);
    const Region uncovered = region_complement(covered);

    EgorovLevel lvl;
    lvl.m = m;
    lvl.budget = std::ldexp(eps, -m - 1);
    lvl.uncovered_mass = region_measure(uncovered, measure);
    lvl.displacement_bound = std::ldexp(1.0, -m + 1);
    double best_mass = std::numeric_limits<double>::infinity();
    bool chosen = false;
    std::vector<Region> pieces;
    for (std::size_t k = start; k < seq.terms.size(); ++k) {
      const std::int64_t n = seq.terms[k];
      pieces = parallel_map<Region>(
          cover.size(),
          [&](std::size_t i) { return region_symdiff(cover[i], region_pushforward(spec, -n, cover[i])).region; },
          exec);
      double mass = 0.0;
      for (const auto& p : pieces) mass += region_measure(p, measure);
      best_mass = std::min(best_mass, mass);
      if (mass < lvl.budget) {
        lvl.n = n;
        lvl.symdiff_mass = mass;
        start = k;
        chosen = true;
        break;
      }
    }
    if (!chosen) throw EgorovShortfall(m, lvl.budget, best_mass);
    Region level_bad = uncovered;
    for (const auto& p : pieces) level_bad = region_union(level_bad, p);
    res.bad_set = region_union(res.bad_set, level_bad);
    res.schedule.push_back(lvl);
  }
  res.bad_measure = region_measure(res.bad_set, measure);

  // Verify the displacement bounds on grid points outside B.
  const SpaceKind space = spec.space();
  const std::size_t count = grid_size(grid, space, spec.depth());
  struct Check {
    bool outside = false;
    std::vector<double> disp;
  };
  const auto checks = parallel_map<Check>(
      count,
      [&](std::size_t i) {
        Check c;
        const Point p = grid_point(grid, space, spec.depth(), i);
        if (contains(res.bad_set, p)) return c;
        c.outside = true;
        for (const auto& lvl : res.schedule) c.disp.push_back(metric_distance(iterate(spec, lvl.n, p), p));
        return c;
      },
      exec);
  bool bounds_ok = true;
  for (const auto& c : checks) {
    if (!c.outside) continue;
    ++res.checked_points;
    for (std::size_t j = 0; j < c.disp.size(); ++j) {
      auto& lvl = res.schedule[j];
      lvl.max_sampled_displacement = std::max(lvl.max_sampled_displacement, c.disp[j]);
      if (!(c.disp[j] < lvl.displacement_bound)) bounds_ok = false;
    }
  }
  res.verified = bounds_ok && res.bad_measure < eps;
  if (!res.verified) {
    std::ostringstream os;
    os << "egorov_bad_set: postcondition failed (measure " << res.bad_measure << ", eps " << eps
       << ", displacement bounds " << (bounds_ok ? "ok" : "violated") << ")";
    throw Error(os.str());
  }
  return res;
}

ComponentDiagnostic symdiff_component_diagnostic(const TransformSpec& spec, const Region& arc, std::int64_t n) {
  if (spec.kind() != TransformKind::kRotation) {
    throw DomainError("symdiff_component_diagnostic is implemented for rotations only");
  }
  if (arc.kind != RegionKind::kCircleIntervals || circle_components(arc).size() != 1) {
    throw DomainError("symdiff_component_diagnostic needs a single circle arc");
  }
  const Region image = region_pushforward(spec, n, arc);
  ComponentDiagnostic out;
  for (const Region& side : {region_difference(arc, image), region_difference(image, arc)}) {
    for (const auto& c : circle_components(side)) {
      ++out.component_count;
      out.max_diameter = std::max(out.max_diameter, c.diameter);
    }
  }
  return out;
}

}  // namespace rigidlab
