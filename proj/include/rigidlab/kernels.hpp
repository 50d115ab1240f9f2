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

#ifndef RIGIDLAB_KERNELS_HPP_
#define RIGIDLAB_KERNELS_HPP_

// Data-parallel kernels shared by the diagnostics. Each kernel has an
// OpenMP path and a plain serial reference path selected by Exec. Both
// paths draw the same random substreams and visit the same grid points,
// so they agree exactly on integer-valued statistics and to rounding on
// real-valued ones. Results never depend on the thread count.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "rigidlab/spaces.hpp"

namespace rigidlab {

enum class Exec { kSerial, kParallel };

inline constexpr std::uint64_t kMonteCarloBlock = 4096;

std::uint64_t splitmix64(std::uint64_t x);

// Independent generator for (seed, stream, block).
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t block = 0);

// 53 random bits scaled into [0, 1).
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Stateless uniform in [0, 1) from a hashed counter.
inline double hashed_uniform01(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(splitmix64(seed ^ splitmix64(index)) >> 11) * 0x1.0p-53;
}

// Uniform sample from the reference measure of the space.
Point sample_reference_point(SpaceKind space, int depth, std::mt19937_64& rng);

// Deterministic lattice, optionally jittered inside each cell.
struct GridPlan {
  int resolution = 64;
  std::optional<std::uint64_t> jitter_seed;

  void validate() const;
};

// Number of lattice points for the space (resolution^dim; for Cantor
// space every point at depth <= 20, otherwise `resolution` spread points).
std::size_t grid_size(const GridPlan& plan, SpaceKind space, int depth);
Point grid_point(const GridPlan& plan, SpaceKind space, int depth, std::size_t index);

struct MonteCarloPlan {
  std::uint64_t seed = 0;
  std::uint64_t samples = 100000;
};

// Point estimate with its standard error; exact values carry stderr 0.
struct Estimate {
  double value = 0.0;
  double stderr = 0.0;
  std::uint64_t samples = 0;
  bool exact = true;
};

struct ArgMax {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = 0;
};

// max_i f(i) over [0, count), ties broken by the smallest index.
template <class F>
ArgMax grid_argmax(std::size_t count, F&& f, Exec exec) {
  ArgMax best;
  if (exec == Exec::kSerial) {
    for (std::size_t i = 0; i < count; ++i) {
      const double v = f(i);
      if (v > best.value) best = {v, i};
    }
    return best;
  }
#pragma omp parallel
  {
    ArgMax local;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
      const double v = f(static_cast<std::size_t>(i));
      if (v > local.value) local = {v, static_cast<std::size_t>(i)};
    }
#pragma omp critical(rigidlab_argmax)
    {
      if (local.value > best.value || (local.value == best.value && local.index < best.index)) {
        best = local;
      }
    }
  }
  return best;
}

// Monte Carlo mean of f(rng) over `samples` draws. Sample j uses block
// j / kMonteCarloBlock of substream (seed, stream, block).
template <class F>
Estimate mc_mean(std::uint64_t samples, std::uint64_t seed, std::uint64_t stream, F&& f, Exec exec) {
  Estimate est;
  est.exact = false;
  est.samples = samples;
  if (samples == 0) return est;
  const std::uint64_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  auto block_len = [&](std::uint64_t b) {
    return std::min<std::uint64_t>(kMonteCarloBlock, samples - b * kMonteCarloBlock);
  };
  double sum = 0.0, sumsq = 0.0;
  if (exec == Exec::kSerial) {
    for (std::uint64_t b = 0; b < blocks; ++b) {
      auto rng = substream(seed, stream, b);
      for (std::uint64_t j = 0; j < block_len(b); ++j) {
        const double v = f(rng);
        sum += v;
        sumsq += v * v;
      }
    }
  } else {
    std::vector<double> bsum(blocks, 0.0), bsq(blocks, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(blocks); ++bi) {
      const auto b = static_cast<std::uint64_t>(bi);
      auto rng = substream(seed, stream, b);
      double s = 0.0, q = 0.0;
      for (std::uint64_t j = 0; j < block_len(b); ++j) {
        const double v = f(rng);
        s += v;
        q += v * v;
      }
      bsum[b] = s;
      bsq[b] = q;
    }
    for (std::uint64_t b = 0; b < blocks; ++b) {
      sum += bsum[b];
      sumsq += bsq[b];
    }
  }
  const double n = static_cast<double>(samples);
  est.value = sum / n;
  if (samples > 1) {
    const double var = std::max(0.0, (sumsq - n * est.value * est.value) / (n - 1.0));
    est.stderr = std::sqrt(var / n);
  }
  return est;
}

// Counts of cell(i) over i in [0, count); cell returns an index < cells.
template <class F>
std::vector<std::uint64_t> histogram(std::size_t count, std::size_t cells, F&& cell, Exec exec) {
  std::vector<std::uint64_t> h(cells, 0);
  if (exec == Exec::kSerial) {
    for (std::size_t i = 0; i < count; ++i) ++h[cell(i)];
    return h;
  }
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(cells, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
      ++local[cell(static_cast<std::size_t>(i))];
    }
#pragma omp critical(rigidlab_histogram)
    for (std::size_t c = 0; c < cells; ++c) h[c] += local[c];
  }
  return h;
}

// out[i] = f(i); iterations must be independent.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& f, Exec exec) {
  std::vector<T> out(count);
  if (exec == Exec::kSerial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  }
  return out;
}

int max_threads();

}  // namespace rigidlab

#endif  // RIGIDLAB_KERNELS_HPP_
