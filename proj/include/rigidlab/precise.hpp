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

#ifndef RIGIDLAB_PRECISE_HPP_
#define RIGIDLAB_PRECISE_HPP_

#include <cmath>
#include <cstdint>

namespace rigidlab {

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2. About 106 bits of
// significand, enough to keep frac(n * alpha) accurate to ~1e-20 for
// |n| <= 1e9.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

namespace detail {

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = detail::two_sum(a.hi, b.hi);
  DoubleDouble t = detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, double b) {
  DoubleDouble p = detail::two_prod(a.hi, b);
  p.lo += a.lo * b;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
  DoubleDouble p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
  const double q1 = a.hi / b.hi;
  DoubleDouble r = a - b * q1;
  const double q2 = r.hi / b.hi;
  r = r - b * q2;
  const double q3 = r.hi / b.hi;
  return DoubleDouble(detail::quick_two_sum(q1, q2)) + DoubleDouble(q3);
}

inline bool operator<(DoubleDouble a, DoubleDouble b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

inline DoubleDouble dd_floor(DoubleDouble a) {
  const double fh = std::floor(a.hi);
  if (fh != a.hi) return {fh, 0.0};
  return detail::quick_two_sum(fh, std::floor(a.lo));
}

inline DoubleDouble dd_sqrt(double x) {
  if (x <= 0.0) return {};
  const double s = std::sqrt(x);
  // One Newton step on the residual x - s^2, computed exactly with fma.
  const double residual = std::fma(-s, s, x);
  return detail::quick_two_sum(s, residual / (2.0 * s));
}

// (sqrt(5) - 1) / 2, the fractional part of the golden ratio.
inline DoubleDouble golden_conjugate() {
  return (dd_sqrt(5.0) - DoubleDouble(1.0)) * 0.5;
}

inline DoubleDouble silver_conjugate() {  // sqrt(2) - 1
  return dd_sqrt(2.0) - DoubleDouble(1.0);
}

// Fractional part of a, in [0, 1).
inline DoubleDouble dd_frac(DoubleDouble a) {
  DoubleDouble f = a - dd_floor(a);
  if (f.hi < 0.0 || (f.hi == 0.0 && f.lo < 0.0)) f = f + DoubleDouble(1.0);
  if (f.hi >= 1.0) f = f - DoubleDouble(1.0);
  return f;
}

// frac(n * alpha) without the drift of repeated addition.
inline DoubleDouble frac_of_multiple(DoubleDouble alpha, std::int64_t n) {
  // Split n so each piece is exactly representable as a double.
  const std::int64_t high = n / (std::int64_t{1} << 32);
  const std::int64_t low = n - high * (std::int64_t{1} << 32);
  DoubleDouble acc = dd_frac(alpha * static_cast<double>(low));
  if (high != 0) {
    const DoubleDouble shifted = dd_frac(alpha * 4294967296.0);
    acc = acc + dd_frac(shifted * static_cast<double>(high));
  }
  return dd_frac(acc);
}

// Distance from n * alpha to the nearest integer.
inline double nearest_integer_distance(DoubleDouble alpha, std::int64_t n) {
  const DoubleDouble f = frac_of_multiple(alpha, n);
  const DoubleDouble g = DoubleDouble(1.0) - f;
  return (f < g ? f : g).value();
}

}  // namespace rigidlab

#endif  // RIGIDLAB_PRECISE_HPP_
