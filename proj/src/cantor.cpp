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

#include "rigidlab/cantor.hpp"

#include <cmath>
#include <unordered_set>

#include "rigidlab/error.hpp"

namespace rigidlab {

namespace {

void require_cantor(const TransformSpec& spec, const char* what) {
  if (spec.space() != SpaceKind::kCantor) {
    throw DomainError(std::string(what) + " needs a transformation of Cantor space, got " + spec.describe());
  }
  if (!pushforward_is_exact(spec)) {
    throw UnsupportedExact(std::string(what) + ": no exact cylinder image for " + spec.describe());
  }
}

constexpr int kMaxEnumerationDepth = 24;

}  // namespace

int ball_depth_for_radius(double r) {
  if (!(r > 0.0)) throw DomainError("ball radius must be positive");
  if (r >= 1.0) return 0;
  return static_cast<int>(std::ceil(std::log2(1.0 / r) - 1e-12));
}

BallInvarianceReport ball_invariance_check(const TransformSpec& spec, int m, std::int64_t n, Exec exec) {
  require_cantor(spec, "ball_invariance_check");
  if (m < 0 || m > spec.depth()) throw DomainError("ball depth must lie in 0..D");
  if (m > kMaxEnumerationDepth) throw DomainError("ball depth above 24 is too large to enumerate");
  BallInvarianceReport rep;
  rep.depth = m;
  rep.n = n;
  rep.total_balls = std::uint64_t{1} << m;
  const auto fixed = parallel_map<char>(
      static_cast<std::size_t>(rep.total_balls),
      [&](std::size_t v) {
        const Region ball = Region::cantor({cylinder_string(v, m)}, spec.depth());
        return static_cast<char>(region_pushforward(spec, n, ball) == ball);
      },
      exec);
  for (char f : fixed) rep.invariant_count += static_cast<std::uint64_t>(f);
  return rep;
}

std::optional<Region> invariant_cylinder_search(const TransformSpec& spec, std::int64_t p, int max_depth) {
  require_cantor(spec, "invariant_cylinder_search");
  if (p < 2) throw DomainError("invariant_cylinder_search needs p >= 2");
  if (max_depth < 1 || max_depth > spec.depth()) throw DomainError("max_depth must lie in 1..D");
  if (max_depth > kMaxEnumerationDepth) throw DomainError("max_depth above 24 is too large to enumerate");
  for (int m = 1; m <= max_depth; ++m) {
    // Breadth-first closure of the all-zeros cylinder under T^p; the
    // visited set is bounded by the 2^m cylinders of this depth.
    std::unordered_set<std::string> visited;
    std::vector<std::string> frontier{std::string(static_cast<std::size_t>(m), '0')};
    visited.insert(frontier.front());
    while (!frontier.empty()) {
      std::vector<std::string> next;
      for (const auto& s : frontier) {
        const Region img = region_pushforward(spec, p, Region::cantor({s}, spec.depth()));
        for (const auto& t : img.cylinders) {
          // Images of depth-m cylinders are unions of depth-m cylinders,
          // possibly merged into shorter prefixes by canonicalization.
          const std::size_t pad = static_cast<std::size_t>(m) - t.size();
          for (std::uint64_t tail = 0; tail < (std::uint64_t{1} << pad); ++tail) {
            std::string full = t + cylinder_string(tail, static_cast<int>(pad));
            if (visited.insert(full).second) next.push_back(std::move(full));
          }
        }
      }
      frontier = std::move(next);
    }
    if (visited.size() < (std::size_t{1} << m)) {
      std::vector<std::string> members(visited.begin(), visited.end());
      Region r = Region::cantor(std::move(members), spec.depth());
      const double mu = reference_measure(r);
      if (mu > 0.0 && mu < 1.0) return r;
    }
  }
  return std::nullopt;
}

InvarianceDemo uniform_rigidity_implies_invariance_demo(const TransformSpec& spec, const RigiditySequence& seq,
                                                        int m, Exec exec) {
  require_cantor(spec, "uniform_rigidity_implies_invariance_demo");
  if (m < 0 || m > spec.depth()) throw DomainError("ball depth must lie in 0..D");
  InvarianceDemo demo;
  demo.m = m;
  demo.implication_holds = true;
  const double radius = std::ldexp(1.0, -m);
  const GridPlan grid{64, std::nullopt};
  for (std::int64_t n : seq.terms) {
    const double modulus = uniform_rigidity_modulus(spec, n, grid, exec);
    if (!(modulus < radius)) continue;
    const BallInvarianceReport rep = ball_invariance_check(spec, m, n, exec);
    if (!demo.conclusive) {
      demo.conclusive = true;
      demo.first_n = n;
    }
    demo.checks.push_back({n, modulus, rep.invariant_count, rep.total_balls});
    if (!rep.all_invariant()) demo.implication_holds = false;
  }
  if (!demo.conclusive) demo.implication_holds = false;
  return demo;
}

}  // namespace rigidlab
