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

#include "rigidlab/kernels.hpp"

#include <cmath>

#include "rigidlab/error.hpp"

namespace rigidlab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t block) {
  const std::uint64_t key = splitmix64(seed ^ splitmix64(stream ^ splitmix64(block + 0x632be59bd9b4e019ULL)));
  return std::mt19937_64(key);
}

Point sample_reference_point(SpaceKind space, int depth, std::mt19937_64& rng) {
  switch (space) {
    case SpaceKind::kCircle: return CirclePoint{uniform01(rng)};
    case SpaceKind::kTorus: {
      const double x = uniform01(rng);
      return TorusPoint{x, uniform01(rng)};
    }
    case SpaceKind::kCantor: return CantorPoint{rng() & depth_mask(depth), depth};
    case SpaceKind::kProduct: break;
  }
  throw DomainError("no reference sampler for product spaces");
}

void GridPlan::validate() const {
  if (resolution < 2) throw DomainError("grid resolution must be at least 2 points per dimension");
}

std::size_t grid_size(const GridPlan& plan, SpaceKind space, int depth) {
  plan.validate();
  const auto r = static_cast<std::size_t>(plan.resolution);
  switch (space) {
    case SpaceKind::kCircle: return r;
    case SpaceKind::kTorus: return r * r;
    case SpaceKind::kCantor: return depth <= 20 ? (std::size_t{1} << depth) : r;
    case SpaceKind::kProduct: break;
  }
  throw DomainError("no grid on product spaces");
}

Point grid_point(const GridPlan& plan, SpaceKind space, int depth, std::size_t index) {
  const auto r = static_cast<std::size_t>(plan.resolution);
  auto coord = [&](std::size_t cell, std::uint64_t salt) {
    double offset = 0.0;
    if (plan.jitter_seed) offset = hashed_uniform01(*plan.jitter_seed ^ salt, index);
    return (static_cast<double>(cell) + offset) / static_cast<double>(r);
  };
  switch (space) {
    case SpaceKind::kCircle: return CirclePoint{coord(index, 0)};
    case SpaceKind::kTorus: return TorusPoint{coord(index % r, 0), coord(index / r, 0x5bd1e995)};
    case SpaceKind::kCantor: {
      if (depth <= 20) return CantorPoint{index, depth};
      // Spread points: a fixed odd multiplier permutes the residues.
      const std::uint64_t v = (index * 0x9e3779b97f4a7c15ULL) & depth_mask(depth);
      return CantorPoint{v, depth};
    }
    case SpaceKind::kProduct: break;
  }
  throw DomainError("no grid on product spaces");
}

int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace rigidlab
