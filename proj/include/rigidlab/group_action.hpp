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

#ifndef RIGIDLAB_GROUP_ACTION_HPP_
#define RIGIDLAB_GROUP_ACTION_HPP_

#include <cstdint>
#include <vector>

#include "rigidlab/kernels.hpp"
#include "rigidlab/report.hpp"
#include "rigidlab/spaces.hpp"

namespace rigidlab {

// A hyperbolic automorphism A (generator id 0) and twists B_{n_1}, ...,
// B_{n_r} (ids 1..r).
class GeneratorSet {
 public:
  static GeneratorSet make(Matrix2 a, std::vector<std::int64_t> twist_indices);

  const Matrix2& automorphism() const { return a_; }
  const std::vector<std::int64_t>& twist_indices() const { return twists_; }
  std::size_t size() const { return specs_.size(); }
  const TransformSpec& generator(std::size_t id) const;
  const std::vector<TransformSpec>& generators() const { return specs_; }
  std::string describe(std::size_t id) const;

 private:
  Matrix2 a_;
  std::vector<std::int64_t> twists_;
  std::vector<TransformSpec> specs_;
};

// Reduced word: nonzero exponents, adjacent letters on distinct generators.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<WordLetter> letters);

  const std::vector<WordLetter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  GroupWord inverse() const;
  // Free-group product, cancelling at the junction.
  GroupWord operator*(const GroupWord& rhs) const;

 private:
  std::vector<WordLetter> letters_;
};

// Letters act left to right: the first letter is applied first.
TorusPoint apply_word(const GeneratorSet& gens, const GroupWord& w, const TorusPoint& p);

TransformSpec word_spec(const GeneratorSet& gens, const GroupWord& w);

struct TwistDisplacement {
  std::int64_t n = 0;
  double displacement = 0.0;
};

// Grid sup of d(B_n p, p) for each twist in the set.
std::vector<TwistDisplacement> rigidity_witness_profile(const GeneratorSet& gens, const GridPlan& grid,
                                                        Exec exec = Exec::kParallel);

enum class SamplingScheme { kStratified, kIid };

// Pushes a uniform sample through spec and histograms it into bins^2 cells;
// returns max |empirical - 1/bins^2| * bins^2. The stratified scheme puts one
// jittered point in each cell of an s x s lattice, s = floor(sqrt(samples)).
double measure_preservation_deviation(const TransformSpec& spec, int bins, std::uint64_t samples,
                                      std::uint64_t seed, SamplingScheme scheme = SamplingScheme::kStratified,
                                      Exec exec = Exec::kParallel);

struct SimultaneityParams {
  int character_max_norm = 10;
  std::int64_t character_horizon = 50;
  std::int64_t mixing_horizon = 500;
  double mixing_delta = 0.05;
  std::uint64_t mixing_samples = 100000;
  std::uint64_t mixing_seed = 7;
  int displacement_grid = 1000;
  int bins = 16;
  std::uint64_t preservation_samples = 1000000;
  std::uint64_t preservation_seed = 11;
  SamplingScheme scheme = SamplingScheme::kStratified;
  double mixing_threshold = 0.1;
  double preservation_threshold = 0.02;
  double control_threshold = 0.5;
};

DiagnosticsReport simultaneity_report(const GeneratorSet& gens, const SimultaneityParams& params,
                                      Exec exec = Exec::kParallel);

}  // namespace rigidlab

#endif  // RIGIDLAB_GROUP_ACTION_HPP_
