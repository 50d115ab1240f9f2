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

#ifndef RIGIDLAB_SPACES_HPP_
#define RIGIDLAB_SPACES_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rigidlab/precise.hpp"

namespace rigidlab {

enum class SpaceKind { kCircle, kTorus, kCantor, kProduct };

std::string_view to_string(SpaceKind kind);

// Reduces x to [0, 1). Never returns 1.0, even for tiny negative x.
double wrap01(double x);

// Arc-length distance on the circle of circumference 1.
double circle_distance(double a, double b);

struct CirclePoint {
  double x = 0.0;
};

struct TorusPoint {
  double x = 0.0;
  double y = 0.0;
};

// Point of {0,1}^depth. Position i (1-based) is bit i-1 of `bits`, so
// position 1 is the least significant digit for the odometer.
struct CantorPoint {
  std::uint64_t bits = 0;
  int depth = 32;

  static CantorPoint from_string(std::string_view s);
  std::string to_string() const;
  int bit(int position) const { return static_cast<int>((bits >> (position - 1)) & 1u); }
};

inline constexpr int kMaxCantorDepth = 64;
inline constexpr int kDefaultCantorDepth = 32;

std::uint64_t depth_mask(int depth);

struct Point;

struct PairPoint {
  std::shared_ptr<const Point> left;
  std::shared_ptr<const Point> right;
};

struct Point {
  std::variant<CirclePoint, TorusPoint, CantorPoint, PairPoint> value;

  Point() = default;
  Point(CirclePoint p) : value(p) {}  // NOLINT
  Point(TorusPoint p) : value(p) {}   // NOLINT
  Point(CantorPoint p) : value(p) {}  // NOLINT
  Point(PairPoint p) : value(std::move(p)) {}  // NOLINT

  static Point pair(Point left, Point right);

  SpaceKind kind() const;
  const CirclePoint& circle() const;
  const TorusPoint& torus() const;
  const CantorPoint& cantor() const;
  const PairPoint& pair() const;
};

bool operator==(const Point& a, const Point& b);

double metric_distance(const Point& p, const Point& q);

struct Matrix2 {
  // Row-major [[a, b], [c, d]].
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return a * d - b * c; }
  std::int64_t trace() const { return a + d; }
  Matrix2 inverse() const;  // requires |det| == 1
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

// Arnold's cat map.
inline constexpr Matrix2 kCatMap{2, 1, 1, 1};

enum class TransformKind { kRotation, kToralAuto, kTwist, kOdometer, kProduct, kWord };

std::string_view to_string(TransformKind kind);

struct WordLetter {
  std::size_t index = 0;
  std::int64_t exponent = 1;
};

// Tagged description of a transformation from the catalog. Immutable once
// built; construct through the named factories, which check invariants.
class TransformSpec {
 public:
  static TransformSpec rotation(DoubleDouble alpha);
  static TransformSpec toral(Matrix2 m);
  static TransformSpec twist(std::int64_t n);
  static TransformSpec odometer(int depth = kDefaultCantorDepth);
  static TransformSpec product(TransformSpec left, TransformSpec right);
  static TransformSpec word(std::vector<TransformSpec> generators, std::vector<WordLetter> letters);

  TransformKind kind() const { return kind_; }
  SpaceKind space() const;

  DoubleDouble alpha() const { return alpha_; }
  const Matrix2& matrix() const { return matrix_; }
  std::int64_t twist_n() const { return twist_n_; }
  int depth() const { return depth_; }
  const std::vector<TransformSpec>& children() const { return children_; }
  const std::vector<WordLetter>& letters() const { return letters_; }

  // Rotation only: true when alpha is a rational with small denominator
  // (periodic orbits; diagnostics degenerate to exact zeros).
  bool rational_alpha() const;

  std::string describe() const;

 private:
  TransformSpec() = default;

  TransformKind kind_ = TransformKind::kRotation;
  DoubleDouble alpha_;
  Matrix2 matrix_;
  std::int64_t twist_n_ = 1;
  int depth_ = kDefaultCantorDepth;
  std::vector<TransformSpec> children_;
  std::vector<WordLetter> letters_;
};

Point apply(const TransformSpec& spec, const Point& p);

// n-fold composition (inverse for negative n), using the exact fast
// paths where available.
Point iterate(const TransformSpec& spec, std::int64_t n, const Point& p);

// T^n with per-spec setup hoisted out of the call (matrix powers for toral
// automorphisms, the rotation shift). Use in hot sampling loops.
class PowerMap {
 public:
  PowerMap(const TransformSpec& spec, std::int64_t n);
  Point operator()(const Point& p) const;

 private:
  const TransformSpec* spec_;
  std::int64_t n_;
  std::array<std::uint64_t, 4> mat_{};
  DoubleDouble shift_;
};

// Torus point with coordinates (px/q, py/q), 0 <= px, py < q.
struct RationalTorusPoint {
  std::uint64_t px = 0;
  std::uint64_t py = 0;
  std::uint64_t q = 1;

  TorusPoint to_point() const;
  friend bool operator==(const RationalTorusPoint&, const RationalTorusPoint&) = default;
};

// Exact iteration of a toral automorphism on a rational point, by reducing
// the matrix power modulo q.
RationalTorusPoint iterate_rational(const TransformSpec& spec, std::int64_t n,
                                   const RationalTorusPoint& p);

// Matrix power modulo 2^64, i.e. the exact action on the lattice
// (2^-64 Z / Z)^2. Negative n uses the integer inverse.
std::array<std::uint64_t, 4> matrix_power_mod64(const Matrix2& m, std::int64_t n);

// Fixed-point representation of a torus coordinate: x = X / 2^64.
std::uint64_t to_fixed64(double x);
double from_fixed64(std::uint64_t x);

}  // namespace rigidlab

#endif  // RIGIDLAB_SPACES_HPP_
