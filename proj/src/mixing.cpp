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

#include "rigidlab/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "rigidlab/error.hpp"

namespace rigidlab {

namespace {

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

using BigInt = boost::multiprecision::cpp_int;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Stream salts so different estimators never share a substream.
constexpr std::uint64_t kCorrelationSalt = 0x1000000000000000ULL;
constexpr std::uint64_t kOverlapSalt = 0x2000000000000000ULL;
constexpr std::uint64_t kKoopmanSalt = 0x3000000000000000ULL;
constexpr std::uint64_t kNormSalt = 0x4000000000000000ULL;

std::uint64_t stream_for(std::uint64_t salt, std::int64_t n) { return salt ^ static_cast<std::uint64_t>(n); }

void require_same_space(const TransformSpec& spec, const Region& r, const PartitionMeasure& m) {
  if (r.space() != spec.space() || m.space() != spec.space()) {
    throw SpaceMismatch("region, measure and transformation must live on the same space");
  }
}

void require_monte_carlo(const Method& method, const TransformSpec& spec, const char* what) {
  if (method.kind != Method::Kind::kMonteCarlo) {
    throw DomainError(std::string(what) + ": no exact evaluation for " + spec.describe() +
                      "; method mismatch, use a Monte Carlo plan");
  }
}

// Golden-section search for a maximum of a unimodal f on [lo, hi].
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, int iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iterations && b - a > 1e-300; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (c >= d) break;
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace

Observable Observable::circle_character(std::int64_t k) {
  Observable o;
  o.kind_ = Kind::kCircleCharacter;
  o.space_ = SpaceKind::kCircle;
  o.k1_ = k;
  o.lipschitz_constant_ = kTwoPi * static_cast<double>(k < 0 ? -k : k);
  return o;
}

Observable Observable::torus_character(std::int64_t k1, std::int64_t k2) {
  Observable o;
  o.kind_ = Kind::kTorusCharacter;
  o.space_ = SpaceKind::kTorus;
  o.k1_ = k1;
  o.k2_ = k2;
  return o;
}

Observable Observable::cos2pi(SpaceKind space) {
  if (space != SpaceKind::kCircle && space != SpaceKind::kTorus) {
    throw DomainError("cos2pi is defined on the circle and the torus");
  }
  Observable o;
  o.kind_ = Kind::kLipschitz;
  o.space_ = space;
  o.lip_ = Lipschitz::kCos2Pi;
  o.lipschitz_constant_ = kTwoPi;
  return o;
}

Observable Observable::dist_to_point(Point anchor) {
  Observable o;
  o.kind_ = Kind::kLipschitz;
  o.space_ = anchor.kind();
  o.lip_ = Lipschitz::kDistToPoint;
  o.lipschitz_constant_ = 1.0;
  o.anchor_ = std::move(anchor);
  return o;
}

Observable Observable::indicator(Region region) {
  Observable o;
  o.kind_ = Kind::kIndicator;
  o.space_ = region.space();
  o.region_ = region_normalize(std::move(region));
  return o;
}

std::complex<double> Observable::operator()(const Point& p) const {
  switch (kind_) {
    case Kind::kCircleCharacter: {
      const double phase = wrap01(static_cast<double>(k1_) * p.circle().x);
      return std::polar(1.0, kTwoPi * phase);
    }
    case Kind::kTorusCharacter: {
      const auto& t = p.torus();
      const double phase = wrap01(wrap01(static_cast<double>(k1_) * t.x) + wrap01(static_cast<double>(k2_) * t.y));
      return std::polar(1.0, kTwoPi * phase);
    }
    case Kind::kLipschitz:
      if (lip_ == Lipschitz::kCos2Pi) {
        const double x = space_ == SpaceKind::kCircle ? p.circle().x : p.torus().x;
        return {std::cos(kTwoPi * x), 0.0};
      }
      return {metric_distance(p, anchor_), 0.0};
    case Kind::kIndicator: return {contains(region_, p) ? 1.0 : 0.0, 0.0};
  }
  return {};
}

std::string Observable::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kCircleCharacter: os << "CircleCharacter(" << k1_ << ")"; break;
    case Kind::kTorusCharacter: os << "TorusCharacter(" << k1_ << "," << k2_ << ")"; break;
    case Kind::kLipschitz: os << (lip_ == Lipschitz::kCos2Pi ? "cos2pi" : "dist_to_point"); break;
    case Kind::kIndicator: os << "Indicator(" << to_string(region_.kind) << ")"; break;
  }
  return os.str();
}

std::string Method::describe() const {
  if (kind == Kind::kExact) return "exact";
  std::ostringstream os;
  os << "monte_carlo(seed=" << plan.seed << ",samples=" << plan.samples << ")";
  return os.str();
}

Estimate correlation(const TransformSpec& spec, std::int64_t n, const Region& a, const Region& b,
                     const PartitionMeasure& measure, const Method& method, Exec exec) {
  require_same_space(spec, a, measure);
  require_same_space(spec, b, measure);
  const double product = region_measure(a, measure) * region_measure(b, measure);
  if (method.kind == Method::Kind::kExact) {
    if (!pushforward_is_exact(spec)) require_monte_carlo(method, spec, "correlation");
    const Region pre = region_pushforward(spec, -n, a);
    Estimate e;
    e.value = region_measure(region_intersection(pre, b), measure) - product;
    return e;
  }
  const PowerMap forward(spec, n);
  const SpaceKind space = spec.space();
  const int depth = measure.depth();
  Estimate e = mc_mean(
      method.plan.samples, method.plan.seed, stream_for(kCorrelationSalt, n),
      [&](std::mt19937_64& rng) {
        const Point x = sample_reference_point(space, depth, rng);
        if (!contains(b, x) || !contains(a, forward(x))) return 0.0;
        return measure.density(x);
      },
      exec);
  e.value -= product;
  return e;
}

Estimate self_overlap(const TransformSpec& spec, std::int64_t n, const Region& a, const PartitionMeasure& measure,
                      const Method& method, Exec exec) {
  require_same_space(spec, a, measure);
  if (method.kind == Method::Kind::kExact) {
    if (!pushforward_is_exact(spec)) require_monte_carlo(method, spec, "self_overlap");
    Estimate e;
    e.value = region_measure(region_intersection(region_pushforward(spec, n, a), a), measure);
    return e;
  }
  // x in T^n A exactly when T^{-n} x in A.
  const PowerMap backward(spec, -n);
  const SpaceKind space = spec.space();
  const int depth = measure.depth();
  return mc_mean(
      method.plan.samples, method.plan.seed, stream_for(kOverlapSalt, n),
      [&](std::mt19937_64& rng) {
        const Point x = sample_reference_point(space, depth, rng);
        if (!contains(a, x) || !contains(a, backward(x))) return 0.0;
        return measure.density(x);
      },
      exec);
}

CesaroSeries cesaro_self_correlation(const TransformSpec& spec, const Region& a, std::int64_t horizon,
                                     const PartitionMeasure& measure, const Method& method, Exec exec) {
  if (horizon < 1) throw DomainError("cesaro_self_correlation needs N >= 1");
  if (method.kind == Method::Kind::kExact && !pushforward_is_exact(spec)) {
    require_monte_carlo(method, spec, "cesaro_self_correlation");
  }
  const auto terms = parallel_map<Estimate>(
      static_cast<std::size_t>(horizon),
      [&](std::size_t i) { return self_overlap(spec, static_cast<std::int64_t>(i) + 1, a, measure, method, Exec::kSerial); },
      exec);
  CesaroSeries out;
  out.exact = method.kind == Method::Kind::kExact;
  double running = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    out.terms.push_back(terms[i].value);
    out.stderrs.push_back(terms[i].stderr);
    running += terms[i].value;
    out.averages.push_back(running / static_cast<double>(i + 1));
  }
  return out;
}

namespace {

std::array<BigInt, 2> apply_transpose_power(const Matrix2& m, std::array<std::int64_t, 2> k, std::int64_t n) {
  const Matrix2 base = n < 0 ? m.inverse() : m;
  // Row vector k times M^n, i.e. (M^T)^n k.
  BigInt u = k[0], v = k[1];
  const std::int64_t steps = n < 0 ? -n : n;
  for (std::int64_t s = 0; s < steps; ++s) {
    BigInt nu = base.a * u + base.c * v;
    BigInt nv = base.b * u + base.d * v;
    u = std::move(nu);
    v = std::move(nv);
  }
  return {u, v};
}

}  // namespace

int character_correlation_toral(const Matrix2& m, std::array<std::int64_t, 2> k, std::array<std::int64_t, 2> l,
                                std::int64_t n) {
  const std::int64_t dt = m.det();
  if (dt != 1 && dt != -1) throw DomainError("character_correlation_toral needs |det M| = 1");
  const auto img = apply_transpose_power(m, k, n);
  return (img[0] == l[0] && img[1] == l[1]) ? 1 : 0;
}

std::array<std::string, 2> frequency_orbit(const Matrix2& m, std::array<std::int64_t, 2> k, std::int64_t n) {
  const auto img = apply_transpose_power(m, k, n);
  return {img[0].str(), img[1].str()};
}

namespace {

Estimate monte_carlo_l2(const TransformSpec& spec, std::int64_t n, const Observable& f,
                        const PartitionMeasure& measure, const Method& method, Exec exec, bool defect) {
  const PowerMap forward(spec, n);
  const SpaceKind space = spec.space();
  const int depth = measure.depth();
  const Estimate sq = mc_mean(
      method.plan.samples, method.plan.seed, stream_for(defect ? kKoopmanSalt : kNormSalt, n),
      [&](std::mt19937_64& rng) {
        const Point x = sample_reference_point(space, depth, rng);
        const std::complex<double> moved = f(forward(x));
        const std::complex<double> diff = defect ? moved - f(x) : moved;
        return std::norm(diff) * measure.density(x);
      },
      exec);
  Estimate e = sq;
  e.value = std::sqrt(std::max(0.0, sq.value));
  // Delta method for the square root.
  e.stderr = e.value > 0.0 ? sq.stderr / (2.0 * e.value) : std::sqrt(sq.stderr);
  return e;
}

}  // namespace

Estimate koopman_l2_defect(const TransformSpec& spec, std::int64_t n, const Observable& f,
                           const PartitionMeasure& measure, const Method& method, Exec exec) {
  if (f.space() != spec.space() || measure.space() != spec.space()) {
    throw SpaceMismatch("observable, measure and transformation must live on the same space");
  }
  if (n == 0) return Estimate{};
  if (method.kind == Method::Kind::kMonteCarlo) return monte_carlo_l2(spec, n, f, measure, method, exec, true);

  Estimate e;
  const bool lebesgue = measure.is_reference();
  if (f.kind() == Observable::Kind::kCircleCharacter && spec.kind() == TransformKind::kRotation && lebesgue) {
    // |e^{2 pi i k n alpha} - 1| = 2 |sin(pi ||k n alpha||)|.
    i128 kn = static_cast<i128>(f.k1()) * n;
    if (kn > INT64_MAX || kn < INT64_MIN) throw DomainError("k * n overflows 64 bits");
    e.value = 2.0 * std::sin(std::numbers::pi * nearest_integer_distance(spec.alpha(), static_cast<std::int64_t>(kn)));
    return e;
  }
  if (f.kind() == Observable::Kind::kTorusCharacter && spec.kind() == TransformKind::kToralAuto && lebesgue) {
    const int same = character_correlation_toral(spec.matrix(), {f.k1(), f.k2()}, {f.k1(), f.k2()}, n);
    e.value = same ? 0.0 : std::sqrt(2.0);
    return e;
  }
  if (f.kind() == Observable::Kind::kTorusCharacter && spec.kind() == TransformKind::kTwist && lebesgue) {
    // f o T^n = f * e^{2 pi i c y} with c = k1 n / m.
    const i128 num = static_cast<i128>(f.k1()) * n;
    const std::int64_t m = spec.twist_n();
    if (num == 0) return e;
    if (num % m == 0) {
      e.value = std::sqrt(2.0);
      return e;
    }
    const double c = static_cast<double>(num) / static_cast<double>(m);
    const double x = kTwoPi * c;
    e.value = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::sin(x) / x));
    return e;
  }
  if (f.kind() == Observable::Kind::kIndicator && pushforward_is_exact(spec)) {
    const Region& a = f.region();
    e.value = std::sqrt(region_measure(region_symdiff(a, region_pushforward(spec, -n, a)).region, measure));
    return e;
  }
  require_monte_carlo(method, spec, "koopman_l2_defect");
  return e;
}

Estimate koopman_l2_norm(const TransformSpec& spec, std::int64_t n, const Observable& f,
                         const PartitionMeasure& measure, const Method& method, Exec exec) {
  if (f.space() != spec.space() || measure.space() != spec.space()) {
    throw SpaceMismatch("observable, measure and transformation must live on the same space");
  }
  if (method.kind == Method::Kind::kMonteCarlo) return monte_carlo_l2(spec, n, f, measure, method, exec, false);
  Estimate e;
  const bool character =
      f.kind() == Observable::Kind::kCircleCharacter || f.kind() == Observable::Kind::kTorusCharacter;
  if (character && measure.is_reference()) {
    e.value = 1.0;
    return e;
  }
  if (f.kind() == Observable::Kind::kIndicator && pushforward_is_exact(spec)) {
    e.value = std::sqrt(region_measure(region_pushforward(spec, -n, f.region()), measure));
    return e;
  }
  require_monte_carlo(method, spec, "koopman_l2_norm");
  return e;
}

std::vector<double> eigenvalue_defect(DoubleDouble alpha, const RigiditySequence& seq) {
  std::vector<double> out;
  out.reserve(seq.terms.size());
  for (std::int64_t n : seq.terms) {
    out.push_back(2.0 * std::sin(std::numbers::pi * nearest_integer_distance(alpha, n)));
  }
  return out;
}

CesaroFourierStats cesaro_fourier_stats(const RigiditySequence& seq, std::size_t k, std::size_t theta_grid,
                                        Exec exec) {
  if (k == 0) throw DomainError("cesaro_fourier_stats needs k >= 1");
  if (k > seq.terms.size()) throw DomainError("cesaro_fourier_stats: k exceeds the sequence length");
  if (theta_grid < 2) throw DomainError("theta grid needs at least 2 points");
  const std::vector<std::int64_t> terms(seq.terms.begin(), seq.terms.begin() + static_cast<std::ptrdiff_t>(k));
  const double kd = static_cast<double>(k);

  CesaroFourierStats st;
  // k distinct frequencies, each with coefficient 1/k: sum of squares k / k^2.
  const std::int64_t ki = static_cast<std::int64_t>(k);
  const std::int64_t g = std::gcd(ki, ki * ki);
  st.norm_sq_num = ki / g;
  st.norm_sq_den = (ki * ki) / g;
  st.coeff_l2_norm = std::sqrt(static_cast<double>(st.norm_sq_num)) / std::sqrt(static_cast<double>(st.norm_sq_den));

  double re0 = 0.0;
  for (std::size_t t = 0; t < k; ++t) re0 += std::cos(0.0);
  st.value_at_zero = re0 / kd;

  const std::uint64_t grid = theta_grid;
  auto grid_value = [&](std::size_t j) {
    double re = 0.0, im = 0.0;
    for (std::int64_t n : terms) {
      const auto r = static_cast<std::uint64_t>((static_cast<u128>(n) * j) % grid);
      const double phase = kTwoPi * static_cast<double>(r) / static_cast<double>(grid);
      re += std::cos(phase);
      im += std::sin(phase);
    }
    return std::hypot(re, im) / kd;
  };
  const ArgMax best = grid_argmax(theta_grid, grid_value, exec);
  st.sup_on_grid = best.value;
  st.argmax_theta = kTwoPi * static_cast<double>(best.index) / static_cast<double>(grid);
  if (best.value < 1.0) {
    const double h = kTwoPi / static_cast<double>(grid);
    auto value = [&](double theta) {
      double re = 0.0, im = 0.0;
      for (std::int64_t n : terms) {
        const double phase = std::fmod(static_cast<double>(n) * theta, kTwoPi);
        re += std::cos(phase);
        im += std::sin(phase);
      }
      return std::hypot(re, im) / kd;
    };
    const auto [theta, v] = golden_max(value, st.argmax_theta - h, st.argmax_theta + h);
    if (v > st.sup_on_grid) {
      st.sup_on_grid = v;
      st.argmax_theta = theta;
    }
  }
  return st;
}

NormWitness operator_norm_witness(std::int64_t n, std::size_t theta_grid, Exec exec) {
  if (n < 1) throw DomainError("operator_norm_witness needs n >= 1");
  if (theta_grid < 2) throw DomainError("theta grid needs at least 2 points");
  constexpr std::uint64_t kMaxGrid = std::uint64_t{1} << 27;
  const std::uint64_t per_period = std::min<std::uint64_t>(kMaxGrid, 8 * static_cast<std::uint64_t>(n));
  const std::uint64_t grid = std::max<std::uint64_t>(theta_grid, per_period);
  auto grid_value = [&](std::size_t j) {
    // n theta / 2 = pi (n j mod G) / G.
    const auto r = static_cast<std::uint64_t>((static_cast<u128>(n) * j) % grid);
    return 2.0 * std::fabs(std::sin(std::numbers::pi * static_cast<double>(r) / static_cast<double>(grid)));
  };
  const ArgMax best = grid_argmax(grid, grid_value, exec);
  NormWitness w;
  w.grid_used = grid;
  w.value = best.value;
  w.theta = kTwoPi * static_cast<double>(best.index) / static_cast<double>(grid);
  const double h = kTwoPi / static_cast<double>(grid);
  const auto [theta, v] = golden_max(
      [n](double t) { return 2.0 * std::fabs(std::sin(0.5 * static_cast<double>(n) * t)); }, w.theta - h, w.theta + h);
  if (v > w.value) {
    w.value = v;
    w.theta = theta;
  }
  return w;
}

MixingFraction density_one_mixing_fraction(const TransformSpec& spec, const Region& a, const Region& b,
                                           std::int64_t horizon, double delta, const PartitionMeasure& measure,
                                           const Method& method, Exec exec) {
  if (!(delta > 0.0)) throw DomainError("density_one_mixing_fraction needs delta > 0");
  if (horizon < 1) throw DomainError("density_one_mixing_fraction needs N >= 1");
  if (method.kind == Method::Kind::kExact && !pushforward_is_exact(spec)) {
    require_monte_carlo(method, spec, "density_one_mixing_fraction");
  }
  MixingFraction out;
  out.correlations = parallel_map<Estimate>(
      static_cast<std::size_t>(horizon),
      [&](std::size_t i) {
        return correlation(spec, static_cast<std::int64_t>(i) + 1, a, b, measure, method, Exec::kSerial);
      },
      exec);
  for (const auto& c : out.correlations) {
    if (std::fabs(c.value) > delta) ++out.exceed_count;
  }
  out.fraction = static_cast<double>(out.exceed_count) / static_cast<double>(horizon);
  return out;
}

}  // namespace rigidlab
