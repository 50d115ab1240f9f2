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

#ifndef RIGIDLAB_RIGIDITY_HPP_
#define RIGIDLAB_RIGIDITY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigidlab/error.hpp"
#include "rigidlab/kernels.hpp"
#include "rigidlab/regions.hpp"
#include "rigidlab/spaces.hpp"

namespace rigidlab {

enum class SequenceProvenance { kContinuedFraction, kGreedyScan, kUserSupplied };

std::string_view to_string(SequenceProvenance p);

// Strictly increasing positive integers n_1 < n_2 < ...
struct RigiditySequence {
  std::vector<std::int64_t> terms;
  SequenceProvenance provenance = SequenceProvenance::kUserSupplied;
  // Greedy scan hit the horizon before the schedule was exhausted.
  bool shortfall = false;
  // Continued fraction terminated: alpha is rational to working precision.
  bool terminated = false;
  // Continued fraction stopped where double-double precision runs out.
  bool precision_limited = false;

  static RigiditySequence user(std::vector<std::int64_t> terms);
  std::size_t size() const { return terms.size(); }
};

RigiditySequence powers_of_two(int first_exponent, int last_exponent);

// Partial quotients [a_0; a_1, a_2, ...] of alpha.
std::vector<std::int64_t> continued_fraction_terms(DoubleDouble alpha, std::size_t count);

// Distinct denominators of the continued-fraction convergents of alpha,
// starting from q = 1.
RigiditySequence convergent_denominators(DoubleDouble alpha, std::size_t count);

// sup_x d(T^n x, x) over the grid, with exact overrides: rotations give
// ||n alpha|| and the odometer gives 2^-(v2(n)+1) (0 once 2^depth | n).
double uniform_rigidity_modulus(const TransformSpec& spec, std::int64_t n, const GridPlan& grid,
                                Exec exec = Exec::kParallel);

// The plain grid sweep, no closed forms.
double grid_sweep_modulus(const TransformSpec& spec, std::int64_t n, const GridPlan& grid,
                          Exec exec = Exec::kParallel);

double odometer_modulus(std::int64_t n, int depth);

struct DefectResult {
  double value = 0.0;
  double stderr = 0.0;
  bool exact = true;
  std::size_t worst_index = 0;  // family member attaining the max
};

// max over A in family of mu(A symdiff T^n A). Exact when the region
// image is exact, otherwise a Monte Carlo estimate (mc required).
DefectResult rigidity_defect(const TransformSpec& spec, std::int64_t n, const std::vector<Region>& family,
                             const PartitionMeasure& measure, const std::optional<MonteCarloPlan>& mc,
                             Exec exec = Exec::kParallel);

// Greedy scan n = 1..horizon: for each eps in the (decreasing) schedule,
// the smallest unused n whose modulus is below eps.
RigiditySequence find_rigidity_sequence(const TransformSpec& spec, const std::vector<double>& eps_schedule,
                                        std::int64_t horizon, const GridPlan& grid,
                                        Exec exec = Exec::kParallel);

struct DensityProfile {
  std::int64_t horizon = 0;
  std::vector<std::int64_t> checkpoints;
  std::vector<std::int64_t> counts;
  std::vector<double> densities;

  double final_density() const { return densities.empty() ? 0.0 : densities.back(); }
};

// Counting function and k(N')/N' at logarithmically spaced N' <= N.
DensityProfile density_profile(const RigiditySequence& seq, std::int64_t horizon, int checkpoints);

struct EgorovLevel {
  int m = 0;
  std::int64_t n = 0;             // chosen n_{k_m}
  double budget = 0.0;            // 2^{-m-1} eps
  double symdiff_mass = 0.0;      // sum_i mu(B_i symdiff T^{-n} B_i)
  double uncovered_mass = 0.0;
  double displacement_bound = 0.0;  // 2^{-m+1}
  double max_sampled_displacement = 0.0;
};

struct EgorovResult {
  Region bad_set;
  std::vector<EgorovLevel> schedule;
  double eps = 0.0;
  int depth = 0;
  double bad_measure = 0.0;
  std::size_t checked_points = 0;
  bool verified = false;
};

class EgorovShortfall : public Error {
 public:
  EgorovShortfall(int level, double budget, double best_mass);
  int level() const { return level_; }
  double budget() const { return budget_; }
  double best_mass() const { return best_mass_; }

 private:
  int level_;
  double budget_;
  double best_mass_;
};

// Exceptional-set construction on dyadic covers: level m uses the balls
// of radius <= 2^-m (dyadic arcs or depth-m cylinders) and picks the first
// term of seq whose total symmetric-difference mass is under 2^-m-1 eps.
// Postconditions (mu(B) < eps, displacement bounds off B on the grid) are
// checked before returning.
EgorovResult egorov_bad_set(const TransformSpec& spec, const PartitionMeasure& measure, double eps, int levels,
                            const RigiditySequence& seq, const GridPlan& grid, Exec exec = Exec::kParallel);

struct ComponentDiagnostic {
  int component_count = 0;
  double max_diameter = 0.0;
};

// Components of A \ T^n A and T^n A \ A for a single arc A under a
// rotation.
ComponentDiagnostic symdiff_component_diagnostic(const TransformSpec& spec, const Region& arc, std::int64_t n);

}  // namespace rigidlab

#endif  // RIGIDLAB_RIGIDITY_HPP_
