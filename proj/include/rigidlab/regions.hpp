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

#ifndef RIGIDLAB_REGIONS_HPP_
#define RIGIDLAB_REGIONS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "rigidlab/spaces.hpp"

namespace rigidlab {

// Endpoints closer than this are identified when regions are combined.
inline constexpr double kEndpointSnap = 1e-12;

enum class RegionKind { kCircleIntervals, kTorusRects, kCantorCylinders };

std::string_view to_string(RegionKind kind);
SpaceKind space_of(RegionKind kind);

// Half-open [lo, hi). As raw input, lo > hi denotes an arc through 0.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// [x0, x1) x [y0, y1).
struct Rect {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  friend bool operator==(const Rect&, const Rect&) = default;
};

// Finite union of disjoint pieces of one kind. The factories return the
// canonical form: sorted, touching pieces merged, sibling cylinders merged.
// Fields are public for inspection; operations assume canonical input.
struct Region {
  RegionKind kind = RegionKind::kCircleIntervals;
  std::vector<Interval> intervals;
  std::vector<Rect> rects;
  std::vector<std::string> cylinders;  // prefixes over positions 1..len
  int depth = kDefaultCantorDepth;     // Cantor truncation depth

  static Region circle(std::vector<Interval> pieces);
  static Region torus(std::vector<Rect> pieces);
  static Region cantor(std::vector<std::string> prefixes, int depth = kDefaultCantorDepth);
  static Region empty(RegionKind kind, int depth = kDefaultCantorDepth);
  static Region whole(RegionKind kind, int depth = kDefaultCantorDepth);

  SpaceKind space() const { return space_of(kind); }
  bool is_empty() const { return intervals.empty() && rects.empty() && cylinders.empty(); }
  std::size_t size() const;

  friend bool operator==(const Region&, const Region&) = default;
};

// Validates pieces and returns the canonical form. Throws DomainError on
// overlapping intervals/rectangles or nested cylinders.
Region region_normalize(Region r);

Region region_union(const Region& a, const Region& b);
Region region_intersection(const Region& a, const Region& b);
Region region_difference(const Region& a, const Region& b);
Region region_complement(const Region& a);

// Connected component of a circle region. `diameter` is the metric
// diameter min(length, 1/2).
struct ArcComponent {
  double start = 0.0;
  double length = 0.0;
  double diameter = 0.0;
};

std::vector<ArcComponent> circle_components(const Region& r);

struct SymmetricDifference {
  Region region;
  // Filled for circle regions only.
  std::vector<ArcComponent> components;
  double max_diameter = 0.0;
};

SymmetricDifference region_symdiff(const Region& a, const Region& b);

bool contains(const Region& r, const Point& p);

// Length, area, or uniform Bernoulli(1/2) cylinder measure.
double reference_measure(const Region& r);

struct MeasureCell {
  Region region;
  double weight = 0.0;
};

// Measure given by weights on a finite partition, uniform (with respect to
// the reference measure) inside each cell.
class PartitionMeasure {
 public:
  static PartitionMeasure reference(SpaceKind space, int depth = kDefaultCantorDepth);
  static PartitionMeasure from_cells(std::vector<MeasureCell> cells);

  bool is_reference() const { return reference_; }
  SpaceKind space() const { return space_; }
  int depth() const { return depth_; }
  const std::vector<MeasureCell>& cells() const { return cells_; }

  // Radon-Nikodym density with respect to the reference measure.
  double density(const Point& p) const;

 private:
  bool reference_ = true;
  SpaceKind space_ = SpaceKind::kCircle;
  int depth_ = kDefaultCantorDepth;
  std::vector<MeasureCell> cells_;
};

double region_measure(const Region& r, const PartitionMeasure& m);

// Exact image T^n(r). Supported for rotations, odometers, and words built
// from them; anything else throws UnsupportedExact.
Region region_pushforward(const TransformSpec& spec, std::int64_t n, const Region& r);

bool pushforward_is_exact(const TransformSpec& spec);

// Cylinder helpers: prefix string <-> (value, length) with position 1 as
// the least significant bit.
std::uint64_t cylinder_value(const std::string& prefix);
std::string cylinder_string(std::uint64_t value, int length);

// All 2^m prefixes of length m in lexicographic order.
std::vector<std::string> dyadic_cylinders(int m);

}  // namespace rigidlab

#endif  // RIGIDLAB_REGIONS_HPP_
