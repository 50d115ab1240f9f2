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

#include "rigidlab/spaces.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "rigidlab/error.hpp"

namespace rigidlab {

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::kCircle: return "circle";
    case SpaceKind::kTorus: return "torus";
    case SpaceKind::kCantor: return "cantor";
    case SpaceKind::kProduct: return "product";
  }
  return "unknown";
}

std::string_view to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::kRotation: return "rotation";
    case TransformKind::kToralAuto: return "toral_auto";
    case TransformKind::kTwist: return "twist";
    case TransformKind::kOdometer: return "odometer";
    case TransformKind::kProduct: return "product";
    case TransformKind::kWord: return "word";
  }
  return "unknown";
}

double wrap01(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

double circle_distance(double a, double b) {
  const double d = std::fabs(wrap01(a) - wrap01(b));
  return std::min(d, 1.0 - d);
}

std::uint64_t depth_mask(int depth) {
  if (depth >= 64) return ~std::uint64_t{0};
  return (std::uint64_t{1} << depth) - 1;
}

CantorPoint CantorPoint::from_string(std::string_view s) {
  if (s.empty() || s.size() > static_cast<std::size_t>(kMaxCantorDepth)) {
    throw DomainError("cantor point needs 1..64 binary digits");
  }
  CantorPoint p;
  p.depth = static_cast<int>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      p.bits |= std::uint64_t{1} << i;
    } else if (s[i] != '0') {
      throw DomainError("cantor point digits must be 0 or 1");
    }
  }
  return p;
}

std::string CantorPoint::to_string() const {
  std::string s(static_cast<std::size_t>(depth), '0');
  for (int i = 0; i < depth; ++i) {
    if ((bits >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

Point Point::pair(Point left, Point right) {
  return Point(PairPoint{std::make_shared<const Point>(std::move(left)),
                         std::make_shared<const Point>(std::move(right))});
}

SpaceKind Point::kind() const {
  switch (value.index()) {
    case 0: return SpaceKind::kCircle;
    case 1: return SpaceKind::kTorus;
    case 2: return SpaceKind::kCantor;
    default: return SpaceKind::kProduct;
  }
}

namespace {

template <class T>
const T& expect(const Point& p, const char* what) {
  if (const T* v = std::get_if<T>(&p.value)) return *v;
  throw SpaceMismatch(std::string("expected a ") + what + " point, got " +
                      std::string(to_string(p.kind())));
}

}  // namespace

const CirclePoint& Point::circle() const { return expect<CirclePoint>(*this, "circle"); }
const TorusPoint& Point::torus() const { return expect<TorusPoint>(*this, "torus"); }
const CantorPoint& Point::cantor() const { return expect<CantorPoint>(*this, "cantor"); }
const PairPoint& Point::pair() const { return expect<PairPoint>(*this, "product"); }

bool operator==(const Point& a, const Point& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case SpaceKind::kCircle: return a.circle().x == b.circle().x;
    case SpaceKind::kTorus:
      return a.torus().x == b.torus().x && a.torus().y == b.torus().y;
    case SpaceKind::kCantor:
      return a.cantor().bits == b.cantor().bits && a.cantor().depth == b.cantor().depth;
    case SpaceKind::kProduct:
      return *a.pair().left == *b.pair().left && *a.pair().right == *b.pair().right;
  }
  return false;
}

double metric_distance(const Point& p, const Point& q) {
  if (p.kind() != q.kind()) {
    throw SpaceMismatch("metric_distance: points from different spaces (" +
                        std::string(to_string(p.kind())) + " vs " +
                        std::string(to_string(q.kind())) + ")");
  }
  switch (p.kind()) {
    case SpaceKind::kCircle:
      return circle_distance(p.circle().x, q.circle().x);
    case SpaceKind::kTorus:
      return std::max(circle_distance(p.torus().x, q.torus().x),
                      circle_distance(p.torus().y, q.torus().y));
    case SpaceKind::kCantor: {
      const auto& a = p.cantor();
      const auto& b = q.cantor();
      if (a.depth != b.depth) throw SpaceMismatch("cantor points of different depth");
      const std::uint64_t diff = (a.bits ^ b.bits) & depth_mask(a.depth);
      if (diff == 0) return 0.0;
      return std::ldexp(1.0, -(std::countr_zero(diff) + 1));
    }
    case SpaceKind::kProduct:
      return std::max(metric_distance(*p.pair().left, *q.pair().left),
                      metric_distance(*p.pair().right, *q.pair().right));
  }
  return 0.0;
}

Matrix2 Matrix2::inverse() const {
  const std::int64_t dt = det();
  if (dt != 1 && dt != -1) throw DomainError("matrix is not unimodular");
  return Matrix2{d * dt, -b * dt, -c * dt, a * dt};
}

TransformSpec TransformSpec::rotation(DoubleDouble alpha) {
  if (!(alpha.value() > 0.0 && alpha.value() < 1.0)) {
    throw DomainError("rotation angle must lie in (0, 1)");
  }
  TransformSpec s;
  s.kind_ = TransformKind::kRotation;
  s.alpha_ = alpha;
  return s;
}

TransformSpec TransformSpec::toral(Matrix2 m) {
  const std::int64_t dt = m.det();
  if (dt != 1 && dt != -1) throw DomainError("toral automorphism needs |det| = 1");
  TransformSpec s;
  s.kind_ = TransformKind::kToralAuto;
  s.matrix_ = m;
  return s;
}

TransformSpec TransformSpec::twist(std::int64_t n) {
  if (n < 1) throw DomainError("twist parameter must be >= 1");
  TransformSpec s;
  s.kind_ = TransformKind::kTwist;
  s.twist_n_ = n;
  return s;
}

TransformSpec TransformSpec::odometer(int depth) {
  if (depth < 1 || depth > kMaxCantorDepth) throw DomainError("cantor depth must be in 1..64");
  TransformSpec s;
  s.kind_ = TransformKind::kOdometer;
  s.depth_ = depth;
  return s;
}

TransformSpec TransformSpec::product(TransformSpec left, TransformSpec right) {
  TransformSpec s;
  s.kind_ = TransformKind::kProduct;
  s.children_ = {std::move(left), std::move(right)};
  return s;
}

TransformSpec TransformSpec::word(std::vector<TransformSpec> generators,
                                  std::vector<WordLetter> letters) {
  if (generators.empty()) throw DomainError("word needs at least one generator");
  const SpaceKind space = generators.front().space();
  for (const auto& g : generators) {
    if (g.space() != space) throw SpaceMismatch("word generators act on different spaces");
    if (space == SpaceKind::kCantor && g.depth() != generators.front().depth()) {
      throw SpaceMismatch("word generators have different cantor depths");
    }
  }
  for (const auto& l : letters) {
    if (l.index >= generators.size()) throw DomainError("word letter index out of range");
  }
  TransformSpec s;
  s.kind_ = TransformKind::kWord;
  s.depth_ = generators.front().depth();
  s.children_ = std::move(generators);
  s.letters_ = std::move(letters);
  return s;
}

SpaceKind TransformSpec::space() const {
  switch (kind_) {
    case TransformKind::kRotation: return SpaceKind::kCircle;
    case TransformKind::kToralAuto:
    case TransformKind::kTwist: return SpaceKind::kTorus;
    case TransformKind::kOdometer: return SpaceKind::kCantor;
    case TransformKind::kProduct: return SpaceKind::kProduct;
    case TransformKind::kWord: return children_.front().space();
  }
  return SpaceKind::kCircle;
}

bool TransformSpec::rational_alpha() const {
  if (kind_ != TransformKind::kRotation) return false;
  // A denominator below 10^6 bringing q*alpha within 1e-13 of an integer.
  DoubleDouble y = alpha_;
  std::int64_t q_prev = 0, q = 1;
  for (int i = 0; i < 64 && q <= 1'000'000; ++i) {
    if (nearest_integer_distance(alpha_, q) < 1e-13) return true;
    const DoubleDouble inv = DoubleDouble(1.0) / y;
    const DoubleDouble a = dd_floor(inv);
    const std::int64_t ai = static_cast<std::int64_t>(a.value());
    y = inv - a;
    if (y.hi <= 0.0) return true;
    const std::int64_t next = ai * q + q_prev;
    q_prev = q;
    q = next;
  }
  return false;
}

std::string TransformSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case TransformKind::kRotation: os << "Rotation(" << alpha_.value() << ")"; break;
    case TransformKind::kToralAuto:
      os << "ToralAuto([[" << matrix_.a << "," << matrix_.b << "],[" << matrix_.c << ","
         << matrix_.d << "]])";
      break;
    case TransformKind::kTwist: os << "Twist(" << twist_n_ << ")"; break;
    case TransformKind::kOdometer: os << "Odometer(D=" << depth_ << ")"; break;
    case TransformKind::kProduct:
      os << "Product(" << children_[0].describe() << ", " << children_[1].describe() << ")";
      break;
    case TransformKind::kWord:
      os << "Word[";
      for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) os << " ";
        os << "g" << letters_[i].index << "^" << letters_[i].exponent;
      }
      os << "]";
      break;
  }
  return os.str();
}

std::array<std::uint64_t, 4> matrix_power_mod64(const Matrix2& m, std::int64_t n) {
  const Matrix2 base = n < 0 ? m.inverse() : m;
  std::array<std::uint64_t, 4> b{static_cast<std::uint64_t>(base.a), static_cast<std::uint64_t>(base.b),
                                 static_cast<std::uint64_t>(base.c), static_cast<std::uint64_t>(base.d)};
  std::array<std::uint64_t, 4> r{1, 0, 0, 1};
  auto mul = [](const std::array<std::uint64_t, 4>& x, const std::array<std::uint64_t, 4>& y) {
    return std::array<std::uint64_t, 4>{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                                        x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
  };
  // Unsigned wraparound is exactly arithmetic modulo 2^64.
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  while (e) {
    if (e & 1u) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::uint64_t to_fixed64(double x) {
  x = wrap01(x);
  // Exact for doubles >= 2^-11; smaller values lose bits below 2^-64.
  return static_cast<std::uint64_t>(std::ldexp(x, 64));
}

double from_fixed64(std::uint64_t x) {
  // Truncate to 53 bits so the result stays strictly below 1.
  return std::ldexp(static_cast<double>(x >> 11), -53);
}

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mod_signed(std::int64_t v, std::uint64_t q) {
  const std::int64_t r = v % static_cast<std::int64_t>(q);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(q) : r);
}

Point iterate_torus_auto(const Matrix2& m, std::int64_t n, const TorusPoint& p) {
  const auto mp = matrix_power_mod64(m, n);
  const std::uint64_t x = to_fixed64(p.x);
  const std::uint64_t y = to_fixed64(p.y);
  return TorusPoint{from_fixed64(mp[0] * x + mp[1] * y), from_fixed64(mp[2] * x + mp[3] * y)};
}

Point iterate_twist(std::int64_t m, std::int64_t n, const TorusPoint& p) {
  const double shift = wrap01(static_cast<double>(n) * p.y / static_cast<double>(m));
  return TorusPoint{wrap01(p.x + shift), p.y};
}

}  // namespace

TorusPoint RationalTorusPoint::to_point() const {
  return TorusPoint{static_cast<double>(px) / static_cast<double>(q),
                    static_cast<double>(py) / static_cast<double>(q)};
}

RationalTorusPoint iterate_rational(const TransformSpec& spec, std::int64_t n,
                                    const RationalTorusPoint& p) {
  if (spec.kind() != TransformKind::kToralAuto) {
    throw UnsupportedExact("exact rational iteration is only defined for toral automorphisms");
  }
  if (p.q == 0 || p.px >= p.q || p.py >= p.q) throw DomainError("rational point out of range");
  const std::uint64_t q = p.q;
  const Matrix2 base = n < 0 ? spec.matrix().inverse() : spec.matrix();
  std::array<std::uint64_t, 4> b{mod_signed(base.a, q), mod_signed(base.b, q), mod_signed(base.c, q),
                                 mod_signed(base.d, q)};
  std::array<std::uint64_t, 4> r{1 % q, 0, 0, 1 % q};
  auto mul = [q](const std::array<std::uint64_t, 4>& x, const std::array<std::uint64_t, 4>& y) {
    auto dot = [q](std::uint64_t a1, std::uint64_t b1, std::uint64_t a2, std::uint64_t b2) {
      return static_cast<std::uint64_t>(((u128)a1 * b1 + (u128)a2 * b2) % q);
    };
    return std::array<std::uint64_t, 4>{dot(x[0], y[0], x[1], y[2]), dot(x[0], y[1], x[1], y[3]),
                                        dot(x[2], y[0], x[3], y[2]), dot(x[2], y[1], x[3], y[3])};
  };
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  while (e) {
    if (e & 1u) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  const auto px = static_cast<std::uint64_t>(((u128)r[0] * p.px + (u128)r[1] * p.py) % q);
  const auto py = static_cast<std::uint64_t>(((u128)r[2] * p.px + (u128)r[3] * p.py) % q);
  return RationalTorusPoint{px, py, q};
}

PowerMap::PowerMap(const TransformSpec& spec, std::int64_t n) : spec_(&spec), n_(n) {
  if (spec.kind() == TransformKind::kToralAuto) mat_ = matrix_power_mod64(spec.matrix(), n);
  if (spec.kind() == TransformKind::kRotation) shift_ = frac_of_multiple(spec.alpha(), n);
}

Point PowerMap::operator()(const Point& p) const {
  if (n_ != 0 && spec_->kind() == TransformKind::kToralAuto && p.kind() == SpaceKind::kTorus) {
    const std::uint64_t x = to_fixed64(p.torus().x);
    const std::uint64_t y = to_fixed64(p.torus().y);
    return TorusPoint{from_fixed64(mat_[0] * x + mat_[1] * y), from_fixed64(mat_[2] * x + mat_[3] * y)};
  }
  if (n_ != 0 && spec_->kind() == TransformKind::kRotation && p.kind() == SpaceKind::kCircle) {
    return CirclePoint{wrap01(dd_frac(shift_ + DoubleDouble(p.circle().x)).value())};
  }
  return iterate(*spec_, n_, p);
}

Point apply(const TransformSpec& spec, const Point& p) { return iterate(spec, 1, p); }

Point iterate(const TransformSpec& spec, std::int64_t n, const Point& p) {
  if (p.kind() != spec.space()) {
    throw SpaceMismatch(spec.describe() + " acts on the " + std::string(to_string(spec.space())) +
                        ", got a " + std::string(to_string(p.kind())) + " point");
  }
  switch (spec.kind()) {
    case TransformKind::kRotation: {
      if (n == 0) return p;
      const DoubleDouble shifted = frac_of_multiple(spec.alpha(), n) + DoubleDouble(p.circle().x);
      return CirclePoint{wrap01(dd_frac(shifted).value())};
    }
    case TransformKind::kToralAuto:
      if (n == 0) return p;
      return iterate_torus_auto(spec.matrix(), n, p.torus());
    case TransformKind::kTwist:
      if (n == 0) return p;
      return iterate_twist(spec.twist_n(), n, p.torus());
    case TransformKind::kOdometer: {
      const CantorPoint& c = p.cantor();
      if (c.depth != spec.depth()) throw SpaceMismatch("cantor point depth differs from odometer depth");
      const std::uint64_t mask = depth_mask(c.depth);
      return CantorPoint{(c.bits + static_cast<std::uint64_t>(n)) & mask, c.depth};
    }
    case TransformKind::kProduct: {
      const PairPoint& pp = p.pair();
      return Point::pair(iterate(spec.children()[0], n, *pp.left),
                         iterate(spec.children()[1], n, *pp.right));
    }
    case TransformKind::kWord: {
      Point cur = p;
      const auto& letters = spec.letters();
      const std::int64_t reps = n < 0 ? -n : n;
      for (std::int64_t r = 0; r < reps; ++r) {
        if (n > 0) {
          for (const auto& l : letters) cur = iterate(spec.children()[l.index], l.exponent, cur);
        } else {
          for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
            cur = iterate(spec.children()[it->index], -it->exponent, cur);
          }
        }
      }
      return cur;
    }
  }
  return p;
}

}  // namespace rigidlab
