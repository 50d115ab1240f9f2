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

#ifndef RIGIDLAB_CANTOR_HPP_
#define RIGIDLAB_CANTOR_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "rigidlab/kernels.hpp"
#include "rigidlab/regions.hpp"
#include "rigidlab/rigidity.hpp"
#include "rigidlab/spaces.hpp"

namespace rigidlab {

// Depth m of the cylinders that are the metric balls of radius r:
// m = ceil(log2(1/r)).
int ball_depth_for_radius(double r);

struct BallInvarianceReport {
  int depth = 0;
  std::int64_t n = 0;
  std::uint64_t invariant_count = 0;
  std::uint64_t total_balls = 0;

  bool all_invariant() const { return invariant_count == total_balls; }
};

// For each of the 2^m depth-m cylinders, whether T^n maps it onto itself.
BallInvarianceReport ball_invariance_check(const TransformSpec& spec, int m, std::int64_t n,
                                           Exec exec = Exec::kParallel);

// Smallest-depth union of cylinders (depth <= max_depth) that is invariant
// under T^p with measure strictly between 0 and 1: the T^p-orbit of the
// all-zeros cylinder at the first depth where that orbit is proper.
std::optional<Region> invariant_cylinder_search(const TransformSpec& spec, std::int64_t p, int max_depth);

struct InvarianceCheck {
  std::int64_t n = 0;
  double modulus = 0.0;
  std::uint64_t invariant_count = 0;
  std::uint64_t total_balls = 0;
};

struct InvarianceDemo {
  int m = 0;
  bool conclusive = false;  // some term had modulus < 2^-m
  std::int64_t first_n = 0;
  std::vector<InvarianceCheck> checks;  // every qualifying term
  bool implication_holds = false;
};

// Walks seq: every term whose uniform-rigidity modulus is below 2^-m must
// leave all radius-2^-m balls invariant (ultrametric inequality).
InvarianceDemo uniform_rigidity_implies_invariance_demo(const TransformSpec& spec, const RigiditySequence& seq,
                                                        int m, Exec exec = Exec::kParallel);

}  // namespace rigidlab

#endif  // RIGIDLAB_CANTOR_HPP_
