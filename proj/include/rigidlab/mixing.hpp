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

#ifndef RIGIDLAB_MIXING_HPP_
#define RIGIDLAB_MIXING_HPP_

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "rigidlab/kernels.hpp"
#include "rigidlab/regions.hpp"
#include "rigidlab/rigidity.hpp"
#include "rigidlab/spaces.hpp"

namespace rigidlab {

// Function on a phase space from a closed catalog.
class Observable {
 public:
  enum class Kind { kCircleCharacter, kTorusCharacter, kLipschitz, kIndicator };
  enum class Lipschitz { kCos2Pi, kDistToPoint };

  static Observable circle_character(std::int64_t k);
  static Observable torus_character(std::int64_t k1, std::int64_t k2);
  // cos(2 pi x) in the first coordinate; on the circle or torus.
  static Observable cos2pi(SpaceKind space);
  static Observable dist_to_point(Point anchor);
  static Observable indicator(Region region);

  Kind kind() const { return kind_; }
  SpaceKind space() const { return space_; }
  std::int64_t k1() const { return k1_; }
  std::int64_t k2() const { return k2_; }
  Lipschitz lipschitz_kind() const { return lip_; }
  double lipschitz_constant() const { return lipschitz_constant_; }
  const Region& region() const { return region_; }
  const Point& anchor() const { return anchor_; }

  std::complex<double> operator()(const Point& p) const;
  std::string describe() const;

 private:
  Observable() = default;

  Kind kind_ = Kind::kCircleCharacter;
  SpaceKind space_ = SpaceKind::kCircle;
  std::int64_t k1_ = 0, k2_ = 0;
  Lipschitz lip_ = Lipschitz::kCos2Pi;
  double lipschitz_constant_ = 0.0;
  Region region_;
  Point anchor_;
};

// Integration method. Exact is only accepted where a closed form or an
// exact region image exists.
struct Method {
  enum class Kind { kExact, kMonteCarlo };
  Kind kind = Kind::kExact;
  MonteCarloPlan plan;

  static Method exact() { return {}; }
  static Method monte_carlo(std::uint64_t seed, std::uint64_t samples) {
    return {Kind::kMonteCarlo, MonteCarloPlan{seed, samples}};
  }
  std::string describe() const;
};

// mu(T^{-n} A intersect B) - mu(A) mu(B).
Estimate correlation(const TransformSpec& spec, std::int64_t n, const Region& a, const Region& b,
                     const PartitionMeasure& measure, const Method& method, Exec exec = Exec::kParallel);

// mu(T^n A intersect A).
Estimate self_overlap(const TransformSpec& spec, std::int64_t n, const Region& a, const PartitionMeasure& measure,
                      const Method& method, Exec exec = Exec::kParallel);

struct CesaroSeries {
  std::vector<double> terms;     // mu(T^n A cap A), n = 1..N
  std::vector<double> stderrs;   // per-term standard errors (0 if exact)
  std::vector<double> averages;  // running means (1/N') sum_{n <= N'}
  bool exact = true;

  double final_average() const { return averages.empty() ? 0.0 : averages.back(); }
};

CesaroSeries cesaro_self_correlation(const TransformSpec& spec, const Region& a, std::int64_t horizon,
                                     const PartitionMeasure& measure, const Method& method,
                                     Exec exec = Exec::kParallel);

// Exact integral of e_k(M^n x) conj(e_l(x)): 1 iff (M^T)^n k = l, else 0.
int character_correlation_toral(const Matrix2& m, std::array<std::int64_t, 2> k, std::array<std::int64_t, 2> l,
                                std::int64_t n);

// (M^T)^n k as decimal strings (entries may exceed 64 bits).
std::array<std::string, 2> frequency_orbit(const Matrix2& m, std::array<std::int64_t, 2> k, std::int64_t n);

// ||f o T^n - f||_2.
Estimate koopman_l2_defect(const TransformSpec& spec, std::int64_t n, const Observable& f,
                           const PartitionMeasure& measure, const Method& method, Exec exec = Exec::kParallel);

// ||f o T^n||_2 (equals ||f||_2 for measure-preserving T).
Estimate koopman_l2_norm(const TransformSpec& spec, std::int64_t n, const Observable& f,
                         const PartitionMeasure& measure, const Method& method, Exec exec = Exec::kParallel);

// |lambda^{n_k} - 1| for lambda = exp(2 pi i alpha), per term.
std::vector<double> eigenvalue_defect(DoubleDouble alpha, const RigiditySequence& seq);

struct CesaroFourierStats {
  double coeff_l2_norm = 0.0;
  double sup_on_grid = 0.0;
  double argmax_theta = 0.0;
  double value_at_zero = 0.0;
  // Squared coefficient norm as the reduced fraction num/den.
  std::int64_t norm_sq_num = 0;
  std::int64_t norm_sq_den = 1;
};

// Statistics of f_k(theta) = (1/k) sum_{j<=k} exp(i n_j theta).
CesaroFourierStats cesaro_fourier_stats(const RigiditySequence& seq, std::size_t k, std::size_t theta_grid,
                                        Exec exec = Exec::kParallel);

struct NormWitness {
  double value = 0.0;
  double theta = 0.0;
  std::size_t grid_used = 0;
};

// sup_theta |e^{i n theta} - 1| on a grid refined to at least eight points
// per period, then golden-section refined around the best cell.
NormWitness operator_norm_witness(std::int64_t n, std::size_t theta_grid, Exec exec = Exec::kParallel);

struct MixingFraction {
  double fraction = 0.0;
  std::size_t exceed_count = 0;
  std::vector<Estimate> correlations;  // n = 1..N
};

// Fraction of n <= N with |correlation(n)| > delta.
MixingFraction density_one_mixing_fraction(const TransformSpec& spec, const Region& a, const Region& b,
                                           std::int64_t horizon, double delta, const PartitionMeasure& measure,
                                           const Method& method, Exec exec = Exec::kParallel);

}  // namespace rigidlab

#endif  // RIGIDLAB_MIXING_HPP_
