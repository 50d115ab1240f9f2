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

#include "rigidlab/group_action.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rigidlab/error.hpp"
#include "rigidlab/mixing.hpp"
#include "rigidlab/regions.hpp"
#include "rigidlab/rigidity.hpp"

namespace rigidlab {

GeneratorSet GeneratorSet::make(Matrix2 a, std::vector<std::int64_t> twist_indices) {
  if (std::llabs(a.trace()) <= 2) {
    throw DomainError("automorphism is not hyperbolic: |trace| = " + std::to_string(std::llabs(a.trace())) +
                      " <= 2");
  }
  for (std::size_t i = 0; i < twist_indices.size(); ++i) {
    if (twist_indices[i] < 1) throw DomainError("twist index must be >= 1");
    if (i > 0 && twist_indices[i] <= twist_indices[i - 1]) {
      throw DomainError("twist indices must be strictly increasing");
    }
  }
  GeneratorSet g;
  g.a_ = a;
  g.twists_ = std::move(twist_indices);
  g.specs_.push_back(TransformSpec::toral(a));
  for (std::int64_t n : g.twists_) g.specs_.push_back(TransformSpec::twist(n));
  return g;
}

const TransformSpec& GeneratorSet::generator(std::size_t id) const {
  if (id >= specs_.size()) {
    throw DomainError("unknown generator id " + std::to_string(id) + " (have " + std::to_string(specs_.size()) +
                      ")");
  }
  return specs_[id];
}

std::string GeneratorSet::describe(std::size_t id) const {
  if (id == 0) return "A";
  return "B_" + std::to_string(generator(id).twist_n());
}

GroupWord::GroupWord(std::vector<WordLetter> letters) : letters_(std::move(letters)) {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i].exponent == 0) throw DomainError("word exponents must be nonzero");
    if (i > 0 && letters_[i].index == letters_[i - 1].index) {
      throw DomainError("word is not reduced: adjacent letters share generator " +
                        std::to_string(letters_[i].index));
    }
  }
}

GroupWord GroupWord::inverse() const {
  std::vector<WordLetter> inv;
  inv.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) inv.push_back({it->index, -it->exponent});
  return GroupWord(std::move(inv));
}

GroupWord GroupWord::operator*(const GroupWord& rhs) const {
  std::vector<WordLetter> out = letters_;
  for (const auto& l : rhs.letters_) {
    if (!out.empty() && out.back().index == l.index) {
      out.back().exponent += l.exponent;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return GroupWord(std::move(out));
}

TorusPoint apply_word(const GeneratorSet& gens, const GroupWord& w, const TorusPoint& p) {
  Point cur = p;
  for (const auto& l : w.letters()) cur = iterate(gens.generator(l.index), l.exponent, cur);
  return cur.torus();
}

TransformSpec word_spec(const GeneratorSet& gens, const GroupWord& w) {
  for (const auto& l : w.letters()) gens.generator(l.index);
  return TransformSpec::word(gens.generators(), w.letters());
}

std::vector<TwistDisplacement> rigidity_witness_profile(const GeneratorSet& gens, const GridPlan& grid, Exec exec) {
  grid.validate();
  std::vector<TwistDisplacement> out;
  for (std::size_t id = 1; id < gens.size(); ++id) {
    const TransformSpec& b = gens.generator(id);
    out.push_back({b.twist_n(), grid_sweep_modulus(b, 1, grid, exec)});
  }
  return out;
}

double measure_preservation_deviation(const TransformSpec& spec, int bins, std::uint64_t samples,
                                      std::uint64_t seed, SamplingScheme scheme, Exec exec) {
  if (spec.space() != SpaceKind::kTorus) {
    throw DomainError("measure_preservation_deviation needs a torus transformation, got " + spec.describe());
  }
  if (bins < 2) throw DomainError("bins must be >= 2");
  const auto cells = static_cast<std::uint64_t>(bins) * static_cast<std::uint64_t>(bins);
  if (samples < cells) throw DomainError("samples must be >= bins^2");
  const PowerMap step(spec, 1);
  std::uint64_t used = samples;
  std::uint64_t side = 0;
  if (scheme == SamplingScheme::kStratified) {
    side = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(samples)));
    while (side * side > samples) --side;
    while ((side + 1) * (side + 1) <= samples) ++side;
    used = side * side;
  }
  const double inv_side = side ? 1.0 / static_cast<double>(side) : 0.0;
  auto cell_of = [&](std::size_t i) -> std::size_t {
    const double u = hashed_uniform01(seed, 2 * i);
    const double v = hashed_uniform01(seed, 2 * i + 1);
    TorusPoint p;
    if (scheme == SamplingScheme::kStratified) {
      const auto cx = static_cast<double>(i % side);
      const auto cy = static_cast<double>(i / side);
      p = {(cx + u) * inv_side, (cy + v) * inv_side};
    } else {
      p = {u, v};
    }
    const TorusPoint q = step(p).torus();
    const auto bx = std::min(bins - 1, static_cast<int>(q.x * bins));
    const auto by = std::min(bins - 1, static_cast<int>(q.y * bins));
    return static_cast<std::size_t>(by) * static_cast<std::size_t>(bins) + static_cast<std::size_t>(bx);
  };
  const auto h = histogram(static_cast<std::size_t>(used), static_cast<std::size_t>(cells), cell_of, exec);
  const double expected = static_cast<double>(used) / static_cast<double>(cells);
  double worst = 0.0;
  for (std::uint64_t c : h) worst = std::max(worst, std::fabs(static_cast<double>(c) - expected) / expected);
  return worst;
}

namespace {

std::vector<std::array<std::int64_t, 2>> nonzero_frequencies(int max_norm) {
  std::vector<std::array<std::int64_t, 2>> ks;
  for (std::int64_t k1 = -max_norm; k1 <= max_norm; ++k1) {
    for (std::int64_t k2 = -max_norm; k2 <= max_norm; ++k2) {
      if (k1 != 0 || k2 != 0) ks.push_back({k1, k2});
    }
  }
  return ks;
}

}  // namespace

DiagnosticsReport simultaneity_report(const GeneratorSet& gens, const SimultaneityParams& params, Exec exec) {
  DiagnosticsReport rep;
  rep.experiment = "group-action";
  rep.name = "group-action";
  rep.seeds["mixing"] = params.mixing_seed;
  rep.seeds["preservation"] = params.preservation_seed;
  const Matrix2& a = gens.automorphism();
  rep.results["automorphism"] = {a.a, a.b, a.c, a.d};
  rep.results["twists"] = gens.twist_indices();

  // (i) exact character correlations <e_k o A^n, e_k> for n >= 1.
  {
    const auto ks = nonzero_frequencies(params.character_max_norm);
    const auto counts = parallel_map<std::int64_t>(
        ks.size(),
        [&](std::size_t i) {
          std::int64_t nonzero = 0;
          for (std::int64_t n = 1; n <= params.character_horizon; ++n) {
            nonzero += character_correlation_toral(a, ks[i], ks[i], n);
          }
          return nonzero;
        },
        exec);
    Table t{"characters", {"k1", "k2", "horizon", "nonzero_count"}, {}};
    std::int64_t total = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      t.add_row({ks[i][0], ks[i][1], params.character_horizon, counts[i]});
      total += counts[i];
    }
    rep.tables.push_back(std::move(t));
    rep.results["characters"] = {{"frequencies", ks.size()}, {"horizon", params.character_horizon},
                                 {"nonzero_total", total}};
    rep.verdicts.push_back(make_verdict("AC9", "character correlations of A vanish for n >= 1",
                                        static_cast<double>(total), Comparator::kEqual, 0.0));
  }

  // (ii) mixing fraction for A on the half torus; rotation control.
  {
    const Region half = Region::torus({{0.0, 0.5, 0.0, 1.0}});
    const auto torus_mu = PartitionMeasure::reference(SpaceKind::kTorus);
    const MixingFraction mf =
        density_one_mixing_fraction(gens.generator(0), half, half, params.mixing_horizon, params.mixing_delta,
                                    torus_mu, Method::monte_carlo(params.mixing_seed, params.mixing_samples), exec);
    const Region arc = Region::circle({{0.0, 0.5}});
    const MixingFraction control = density_one_mixing_fraction(
        TransformSpec::rotation(golden_conjugate()), arc, arc, params.mixing_horizon, params.mixing_delta,
        PartitionMeasure::reference(SpaceKind::kCircle), Method::exact(), exec);
    Table t{"mixing", {"n", "automorphism_correlation", "automorphism_stderr", "rotation_correlation"}, {}};
    for (std::size_t i = 0; i < mf.correlations.size(); ++i) {
      t.add_row({static_cast<std::int64_t>(i + 1), mf.correlations[i].value, mf.correlations[i].stderr,
                 control.correlations[i].value});
    }
    rep.tables.push_back(std::move(t));
    rep.results["mixing"] = {{"horizon", params.mixing_horizon},
                             {"delta", params.mixing_delta},
                             {"samples", params.mixing_samples},
                             {"fraction", mf.fraction},
                             {"control_fraction", control.fraction}};
    rep.verdicts.push_back(make_verdict("AC9", "mixing fraction of A", mf.fraction, Comparator::kLess,
                                        params.mixing_threshold));
    rep.verdicts.push_back(make_verdict("AC9", "rotation control mixing fraction", control.fraction,
                                        Comparator::kGreater, params.control_threshold));
  }

  // (iii) twist displacement profile.
  if (gens.size() > 1) {
    const auto prof = rigidity_witness_profile(gens, GridPlan{params.displacement_grid, std::nullopt}, exec);
    Table t{"rigidity", {"n", "displacement", "bound"}, {}};
    double worst_ratio = 0.0;
    bool decreasing = true;
    for (std::size_t i = 0; i < prof.size(); ++i) {
      const double bound = 1.0 / static_cast<double>(prof[i].n);
      t.add_row({prof[i].n, prof[i].displacement, bound});
      worst_ratio = std::max(worst_ratio, prof[i].displacement * static_cast<double>(prof[i].n));
      if (i > 0 && !(prof[i].displacement < prof[i - 1].displacement)) decreasing = false;
      if (!(prof[i].displacement > 0.0)) decreasing = false;
    }
    rep.tables.push_back(std::move(t));
    rep.results["rigidity"] = {{"present", true},
                               {"grid", params.displacement_grid},
                               {"min_displacement", prof.back().displacement},
                               {"max_n_times_displacement", worst_ratio},
                               {"strictly_decreasing", decreasing}};
    rep.verdicts.push_back(
        make_verdict("AC9", "max n * displacement(B_n)", worst_ratio, Comparator::kLessEqual, 1.0));
    rep.verdicts.push_back(make_check("AC9", "twist displacements strictly decreasing and positive", decreasing));
  } else {
    rep.results["rigidity"] = {{"present", false}};
  }

  // (iv) measure preservation for every generator.
  {
    Table t{"preservation", {"generator", "bins", "samples", "deviation"}, {}};
    double worst = 0.0;
    for (std::size_t id = 0; id < gens.size(); ++id) {
      const double dev = measure_preservation_deviation(gens.generator(id), params.bins, params.preservation_samples,
                                                        params.preservation_seed, params.scheme, exec);
      t.add_row({gens.describe(id), static_cast<std::int64_t>(params.bins),
                 static_cast<std::int64_t>(params.preservation_samples), dev});
      worst = std::max(worst, dev);
    }
    rep.tables.push_back(std::move(t));
    rep.results["preservation"] = {
        {"scheme", params.scheme == SamplingScheme::kStratified ? "stratified" : "iid"},
        {"max_deviation", worst}};
    rep.verdicts.push_back(make_verdict("AC9", "max measure-preservation deviation", worst, Comparator::kLess,
                                        params.preservation_threshold));
  }
  return rep;
}

}  // namespace rigidlab
