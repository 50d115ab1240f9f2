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

#include "rigidlab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rigidlab/error.hpp"

namespace rigidlab {

std::string_view to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::kCircleIntervals: return "circle_intervals";
    case RegionKind::kTorusRects: return "torus_rects";
    case RegionKind::kCantorCylinders: return "cantor_cylinders";
  }
  return "unknown";
}

SpaceKind space_of(RegionKind kind) {
  switch (kind) {
    case RegionKind::kCircleIntervals: return SpaceKind::kCircle;
    case RegionKind::kTorusRects: return SpaceKind::kTorus;
    case RegionKind::kCantorCylinders: return SpaceKind::kCantor;
  }
  return SpaceKind::kCircle;
}

std::size_t Region::size() const {
  switch (kind) {
    case RegionKind::kCircleIntervals: return intervals.size();
    case RegionKind::kTorusRects: return rects.size();
    case RegionKind::kCantorCylinders: return cylinders.size();
  }
  return 0;
}

namespace {

enum class SetOp { kUnion, kIntersection, kDifference, kSymdiff };

bool combine(SetOp op, bool a, bool b) {
  switch (op) {
    case SetOp::kUnion: return a || b;
    case SetOp::kIntersection: return a && b;
    case SetOp::kDifference: return a && !b;
    case SetOp::kSymdiff: return a != b;
  }
  return false;
}

double snap01(double v) {
  if (std::fabs(v) < kEndpointSnap) return 0.0;
  if (std::fabs(v - 1.0) < kEndpointSnap) return 1.0;
  return v;
}

// Sorted breakpoints with near-duplicates removed.
std::vector<double> snapped_breakpoints(std::vector<double> pts) {
  pts.push_back(0.0);
  pts.push_back(1.0);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double p : pts) {
    if (out.empty() || p - out.back() >= kEndpointSnap) out.push_back(p);
  }
  if (out.back() != 1.0) out.back() = 1.0;
  return out;
}

bool in_intervals(const std::vector<Interval>& iv, double x) {
  auto it = std::upper_bound(iv.begin(), iv.end(), x,
                             [](double v, const Interval& i) { return v < i.lo; });
  if (it == iv.begin()) return false;
  --it;
  return x < it->hi;
}

// Boolean op on canonical, non-wrapping interval lists inside [0, 1].
std::vector<Interval> interval_op(const std::vector<Interval>& a, const std::vector<Interval>& b,
                                  SetOp op) {
  std::vector<double> pts;
  pts.reserve(2 * (a.size() + b.size()));
  for (const auto& i : a) pts.insert(pts.end(), {i.lo, i.hi});
  for (const auto& i : b) pts.insert(pts.end(), {i.lo, i.hi});
  const std::vector<double> bp = snapped_breakpoints(std::move(pts));
  std::vector<Interval> out;
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    const double mid = 0.5 * (bp[k] + bp[k + 1]);
    if (!combine(op, in_intervals(a, mid), in_intervals(b, mid))) continue;
    if (!out.empty() && out.back().hi == bp[k]) {
      out.back().hi = bp[k + 1];
    } else {
      out.push_back({bp[k], bp[k + 1]});
    }
  }
  return out;
}

std::vector<Interval> canonical_intervals(std::vector<Interval> raw) {
  std::vector<Interval> pieces;
  for (auto iv : raw) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) throw DomainError("non-finite endpoint");
    if (iv.lo < 0.0 || iv.lo > 1.0 || iv.hi < 0.0 || iv.hi > 1.0) {
      throw DomainError("interval endpoints must lie in [0, 1]");
    }
    iv.lo = snap01(iv.lo);
    iv.hi = snap01(iv.hi);
    if (iv.lo < iv.hi) {
      pieces.push_back(iv);
    } else if (iv.lo > iv.hi) {
      if (iv.lo < 1.0) pieces.push_back({iv.lo, 1.0});
      if (iv.hi > 0.0) pieces.push_back({0.0, iv.hi});
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  for (std::size_t k = 1; k < pieces.size(); ++k) {
    if (pieces[k].lo < pieces[k - 1].hi - kEndpointSnap) {
      throw DomainError("overlapping intervals; use region_union to combine them");
    }
  }
  return interval_op(pieces, {}, SetOp::kUnion);
}

// Rects whose x-range covers the slab containing xm, as y-intervals.
std::vector<Interval> slab_column(const std::vector<Rect>& rects, double xm) {
  std::vector<Interval> col;
  for (const auto& r : rects) {
    if (r.x0 <= xm && xm < r.x1) col.push_back({r.y0, r.y1});
  }
  std::sort(col.begin(), col.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  return col;
}

std::vector<Rect> rect_op(const std::vector<Rect>& a, const std::vector<Rect>& b, SetOp op) {
  std::vector<double> pts;
  for (const auto& r : a) pts.insert(pts.end(), {r.x0, r.x1});
  for (const auto& r : b) pts.insert(pts.end(), {r.x0, r.x1});
  const std::vector<double> bp = snapped_breakpoints(std::move(pts));
  std::vector<Rect> out;
  std::vector<Interval> run_col;
  double run_start = 0.0;
  auto flush = [&](double run_end) {
    for (const auto& iv : run_col) out.push_back({run_start, run_end, iv.lo, iv.hi});
  };
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    const double xm = 0.5 * (bp[k] + bp[k + 1]);
    // Columns of canonical inputs are disjoint, so a union pass merges them.
    auto col = interval_op(interval_op(slab_column(a, xm), {}, SetOp::kUnion),
                           interval_op(slab_column(b, xm), {}, SetOp::kUnion), op);
    if (k == 0) {
      run_col = std::move(col);
      run_start = bp[0];
    } else if (col != run_col) {
      flush(bp[k]);
      run_col = std::move(col);
      run_start = bp[k];
    }
  }
  flush(bp.back());
  std::sort(out.begin(), out.end(), [](const Rect& x, const Rect& y) {
    return x.x0 < y.x0 || (x.x0 == y.x0 && x.y0 < y.y0);
  });
  return out;
}

bool rects_overlap(const Rect& p, const Rect& q) {
  const double w = std::min(p.x1, q.x1) - std::max(p.x0, q.x0);
  const double h = std::min(p.y1, q.y1) - std::max(p.y0, q.y0);
  return w > kEndpointSnap && h > kEndpointSnap;
}

std::vector<Rect> canonical_rects(const std::vector<Rect>& raw) {
  std::vector<Rect> pieces;
  for (auto r : raw) {
    for (double v : {r.x0, r.x1, r.y0, r.y1}) {
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) throw DomainError("rectangle edges must lie in [0, 1]");
    }
    r = {snap01(r.x0), snap01(r.x1), snap01(r.y0), snap01(r.y1)};
    if (r.x0 > r.x1 || r.y0 > r.y1) throw DomainError("rectangle edges out of order");
    if (r.x0 < r.x1 && r.y0 < r.y1) pieces.push_back(r);
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (rects_overlap(pieces[i], pieces[j])) {
        throw DomainError("overlapping rectangles; use region_union to combine them");
      }
    }
  }
  return rect_op(pieces, {}, SetOp::kUnion);
}

// Recursive boolean op on prefix sets. `a_sub`/`b_sub` hold the strings
// strictly extending `prefix`; `a_full`/`b_full` mark that an ancestor (or
// the node itself) is a member. Returns true when the result covers the
// whole node; partial results are appended to `out`.
bool cylinder_op_rec(bool a_full, std::vector<std::string> a_sub, bool b_full,
                     std::vector<std::string> b_sub, std::string& prefix, SetOp op,
                     std::vector<std::string>& out) {
  auto absorb = [&prefix](bool& full, std::vector<std::string>& sub) {
    if (full) {
      sub.clear();
      return;
    }
    if (std::find(sub.begin(), sub.end(), prefix) != sub.end()) {
      full = true;
      sub.clear();
    }
  };
  absorb(a_full, a_sub);
  absorb(b_full, b_sub);
  const bool a_partial = !a_full && !a_sub.empty();
  const bool b_partial = !b_full && !b_sub.empty();
  if (!a_partial && !b_partial) return combine(op, a_full, b_full);

  bool child_full[2];
  const std::size_t mark = out.size();
  for (char c : {'0', '1'}) {
    prefix.push_back(c);
    auto filter = [&prefix](const std::vector<std::string>& v) {
      std::vector<std::string> r;
      for (const auto& s : v) {
        if (s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0) r.push_back(s);
      }
      return r;
    };
    child_full[c - '0'] = cylinder_op_rec(a_full, filter(a_sub), b_full, filter(b_sub), prefix, op, out);
    prefix.pop_back();
  }
  if (child_full[0] && child_full[1]) {
    out.resize(mark);
    return true;
  }
  for (char c : {'0', '1'}) {
    if (child_full[c - '0']) out.push_back(prefix + c);
  }
  return false;
}

std::vector<std::string> cylinder_op(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b, SetOp op) {
  std::string prefix;
  std::vector<std::string> out;
  if (cylinder_op_rec(false, a, false, b, prefix, op, out)) return {std::string()};
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> canonical_cylinders(std::vector<std::string> raw, int depth) {
  if (depth < 1 || depth > kMaxCantorDepth) throw DomainError("cantor depth must be in 1..64");
  for (const auto& s : raw) {
    if (s.size() > static_cast<std::size_t>(depth)) throw DomainError("cylinder longer than depth");
    if (s.find_first_not_of("01") != std::string::npos) throw DomainError("cylinder digits must be 0/1");
  }
  std::sort(raw.begin(), raw.end());
  for (std::size_t k = 1; k < raw.size(); ++k) {
    if (raw[k].compare(0, raw[k - 1].size(), raw[k - 1]) == 0) {
      throw DomainError("nested cylinders '" + raw[k - 1] + "' and '" + raw[k] + "'");
    }
  }
  return cylinder_op(raw, {}, SetOp::kUnion);
}

Region binary_op(const Region& a, const Region& b, SetOp op) {
  if (a.kind != b.kind) {
    throw SpaceMismatch("region operation on " + std::string(to_string(a.kind)) + " and " +
                        std::string(to_string(b.kind)));
  }
  Region r;
  r.kind = a.kind;
  switch (a.kind) {
    case RegionKind::kCircleIntervals: r.intervals = interval_op(a.intervals, b.intervals, op); break;
    case RegionKind::kTorusRects: r.rects = rect_op(a.rects, b.rects, op); break;
    case RegionKind::kCantorCylinders:
      if (a.depth != b.depth) throw SpaceMismatch("cantor regions of different depth");
      r.depth = a.depth;
      r.cylinders = cylinder_op(a.cylinders, b.cylinders, op);
      break;
  }
  return r;
}

}  // namespace

Region region_normalize(Region r) {
  switch (r.kind) {
    case RegionKind::kCircleIntervals:
      r.intervals = canonical_intervals(std::move(r.intervals));
      r.rects.clear();
      r.cylinders.clear();
      break;
    case RegionKind::kTorusRects:
      r.rects = canonical_rects(r.rects);
      r.intervals.clear();
      r.cylinders.clear();
      break;
    case RegionKind::kCantorCylinders:
      r.cylinders = canonical_cylinders(std::move(r.cylinders), r.depth);
      r.intervals.clear();
      r.rects.clear();
      break;
  }
  return r;
}

Region Region::circle(std::vector<Interval> pieces) {
  Region r;
  r.kind = RegionKind::kCircleIntervals;
  r.intervals = std::move(pieces);
  return region_normalize(std::move(r));
}

Region Region::torus(std::vector<Rect> pieces) {
  Region r;
  r.kind = RegionKind::kTorusRects;
  r.rects = std::move(pieces);
  return region_normalize(std::move(r));
}

Region Region::cantor(std::vector<std::string> prefixes, int depth) {
  Region r;
  r.kind = RegionKind::kCantorCylinders;
  r.depth = depth;
  r.cylinders = std::move(prefixes);
  return region_normalize(std::move(r));
}

Region Region::empty(RegionKind kind, int depth) {
  Region r;
  r.kind = kind;
  r.depth = depth;
  return r;
}

Region Region::whole(RegionKind kind, int depth) {
  switch (kind) {
    case RegionKind::kCircleIntervals: return circle({{0.0, 1.0}});
    case RegionKind::kTorusRects: return torus({{0.0, 1.0, 0.0, 1.0}});
    case RegionKind::kCantorCylinders: return cantor({""}, depth);
  }
  return empty(kind, depth);
}

Region region_union(const Region& a, const Region& b) { return binary_op(a, b, SetOp::kUnion); }
Region region_intersection(const Region& a, const Region& b) {
  return binary_op(a, b, SetOp::kIntersection);
}
Region region_difference(const Region& a, const Region& b) {
  return binary_op(a, b, SetOp::kDifference);
}
Region region_complement(const Region& a) {
  return binary_op(Region::whole(a.kind, a.depth), a, SetOp::kDifference);
}

std::vector<ArcComponent> circle_components(const Region& r) {
  if (r.kind != RegionKind::kCircleIntervals) throw SpaceMismatch("circle_components needs a circle region");
  std::vector<ArcComponent> comps;
  for (const auto& iv : r.intervals) comps.push_back({iv.lo, iv.hi - iv.lo, 0.0});
  // Arcs touching 0 from both sides are one component on the circle.
  if (comps.size() >= 2 && r.intervals.front().lo == 0.0 && r.intervals.back().hi == 1.0) {
    comps.back().length += comps.front().length;
    comps.erase(comps.begin());
  }
  for (auto& c : comps) c.diameter = std::min(c.length, 0.5);
  return comps;
}

SymmetricDifference region_symdiff(const Region& a, const Region& b) {
  SymmetricDifference out;
  out.region = binary_op(a, b, SetOp::kSymdiff);
  if (out.region.kind == RegionKind::kCircleIntervals) {
    out.components = circle_components(out.region);
    for (const auto& c : out.components) out.max_diameter = std::max(out.max_diameter, c.diameter);
  }
  return out;
}

std::uint64_t cylinder_value(const std::string& prefix) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] == '1') v |= std::uint64_t{1} << i;
  }
  return v;
}

std::string cylinder_string(std::uint64_t value, int length) {
  std::string s(static_cast<std::size_t>(length), '0');
  for (int i = 0; i < length; ++i) {
    if ((value >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::vector<std::string> dyadic_cylinders(int m) {
  if (m < 0 || m > 24) throw DomainError("dyadic cylinder depth must be in 0..24");
  std::vector<std::string> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << m); ++v) out.push_back(cylinder_string(v, m));
  std::sort(out.begin(), out.end());
  return out;
}

bool contains(const Region& r, const Point& p) {
  if (r.space() != p.kind()) throw SpaceMismatch("point and region live in different spaces");
  switch (r.kind) {
    case RegionKind::kCircleIntervals: return in_intervals(r.intervals, p.circle().x);
    case RegionKind::kTorusRects: {
      const auto& t = p.torus();
      for (const auto& q : r.rects) {
        if (q.x0 <= t.x && t.x < q.x1 && q.y0 <= t.y && t.y < q.y1) return true;
      }
      return false;
    }
    case RegionKind::kCantorCylinders: {
      const auto& c = p.cantor();
      if (c.depth != r.depth) throw SpaceMismatch("cantor point depth differs from region depth");
      for (const auto& s : r.cylinders) {
        const int len = static_cast<int>(s.size());
        if ((c.bits & depth_mask(len)) == cylinder_value(s)) return true;
      }
      return false;
    }
  }
  return false;
}

double reference_measure(const Region& r) {
  double total = 0.0;
  switch (r.kind) {
    case RegionKind::kCircleIntervals:
      for (const auto& iv : r.intervals) total += iv.hi - iv.lo;
      break;
    case RegionKind::kTorusRects:
      for (const auto& q : r.rects) total += (q.x1 - q.x0) * (q.y1 - q.y0);
      break;
    case RegionKind::kCantorCylinders:
      for (const auto& s : r.cylinders) total += std::ldexp(1.0, -static_cast<int>(s.size()));
      break;
  }
  return total;
}

PartitionMeasure PartitionMeasure::reference(SpaceKind space, int depth) {
  if (space == SpaceKind::kProduct) throw DomainError("no reference measure on product spaces");
  PartitionMeasure m;
  m.reference_ = true;
  m.space_ = space;
  m.depth_ = depth;
  RegionKind kind = space == SpaceKind::kCircle  ? RegionKind::kCircleIntervals
                    : space == SpaceKind::kTorus ? RegionKind::kTorusRects
                                                 : RegionKind::kCantorCylinders;
  m.cells_.push_back({Region::whole(kind, depth), 1.0});
  return m;
}

PartitionMeasure PartitionMeasure::from_cells(std::vector<MeasureCell> cells) {
  if (cells.empty()) throw DomainError("partition measure needs at least one cell");
  const RegionKind kind = cells.front().region.kind;
  const int depth = cells.front().region.depth;
  double weight_sum = 0.0;
  Region covered = Region::empty(kind, depth);
  double ref_sum = 0.0;
  for (const auto& c : cells) {
    if (c.region.kind != kind) throw SpaceMismatch("partition cells of different kinds");
    if (!(c.weight >= 0.0)) throw DomainError("partition weights must be nonnegative");
    if (reference_measure(c.region) <= 0.0) throw DomainError("partition cells must have positive measure");
    if (reference_measure(region_intersection(covered, c.region)) > kEndpointSnap) {
      throw DomainError("partition cells overlap");
    }
    covered = region_union(covered, c.region);
    weight_sum += c.weight;
    ref_sum += reference_measure(c.region);
  }
  if (std::fabs(weight_sum - 1.0) > 1e-12) throw DomainError("partition weights must sum to 1");
  if (std::fabs(ref_sum - 1.0) > 1e-12) throw DomainError("partition cells must cover the space");
  PartitionMeasure m;
  m.reference_ = false;
  m.space_ = space_of(kind);
  m.depth_ = depth;
  m.cells_ = std::move(cells);
  return m;
}

double PartitionMeasure::density(const Point& p) const {
  if (reference_) return 1.0;
  for (const auto& c : cells_) {
    if (contains(c.region, p)) return c.weight / reference_measure(c.region);
  }
  return 0.0;
}

double region_measure(const Region& r, const PartitionMeasure& m) {
  if (r.space() != m.space()) throw SpaceMismatch("region and measure live in different spaces");
  if (m.is_reference()) return reference_measure(r);
  double total = 0.0;
  for (const auto& c : m.cells()) {
    total += c.weight * reference_measure(region_intersection(r, c.region)) / reference_measure(c.region);
  }
  return total;
}

bool pushforward_is_exact(const TransformSpec& spec) {
  switch (spec.kind()) {
    case TransformKind::kRotation:
    case TransformKind::kOdometer: return true;
    case TransformKind::kWord:
      return std::all_of(spec.children().begin(), spec.children().end(),
                         [](const TransformSpec& g) { return pushforward_is_exact(g); });
    default: return false;
  }
}

Region region_pushforward(const TransformSpec& spec, std::int64_t n, const Region& r) {
  if (!pushforward_is_exact(spec)) {
    throw UnsupportedExact("no exact region image for " + spec.describe() +
                           "; use a Monte Carlo plan");
  }
  if (r.space() != spec.space()) throw SpaceMismatch("region and transformation live in different spaces");
  if (n == 0) return r;
  switch (spec.kind()) {
    case TransformKind::kRotation: {
      const double shift = frac_of_multiple(spec.alpha(), n).value();
      Region out;
      out.kind = RegionKind::kCircleIntervals;
      for (const auto& iv : r.intervals) {
        const double lo = iv.lo + shift;
        const double hi = iv.hi + shift;
        if (hi - lo >= 1.0) return Region::whole(r.kind);
        double wlo = lo;
        double whi = hi;
        if (wlo >= 1.0) {
          wlo -= 1.0;
          whi -= 1.0;
        } else if (whi > 1.0) {
          whi -= 1.0;  // arc through 0, split by normalize
        }
        out.intervals.push_back({snap01(wlo), snap01(whi)});
      }
      return region_normalize(std::move(out));
    }
    case TransformKind::kOdometer: {
      if (r.depth != spec.depth()) throw SpaceMismatch("cantor region depth differs from odometer depth");
      Region out = Region::empty(r.kind, r.depth);
      for (const auto& s : r.cylinders) {
        const int len = static_cast<int>(s.size());
        // The low len digits of x + n depend only on the low len digits of x.
        const std::uint64_t v = (cylinder_value(s) + static_cast<std::uint64_t>(n)) & depth_mask(len);
        out.cylinders.push_back(cylinder_string(v, len));
      }
      return region_normalize(std::move(out));
    }
    case TransformKind::kWord: {
      Region cur = r;
      const std::int64_t reps = n < 0 ? -n : n;
      for (std::int64_t k = 0; k < reps; ++k) {
        if (n > 0) {
          for (const auto& l : spec.letters()) cur = region_pushforward(spec.children()[l.index], l.exponent, cur);
        } else {
          for (auto it = spec.letters().rbegin(); it != spec.letters().rend(); ++it) {
            cur = region_pushforward(spec.children()[it->index], -it->exponent, cur);
          }
        }
      }
      return cur;
    }
    default: break;
  }
  throw UnsupportedExact("no exact region image for " + spec.describe());
}

}  // namespace rigidlab
