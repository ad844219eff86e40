// Copyright 2026 The treegroups Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TREEGROUPS_SAMPLING_HPP
#define TREEGROUPS_SAMPLING_HPP

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>

#include "treegroups/group.hpp"

namespace treegroups {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Independent stream `stream` derived from a master seed.
inline Rng substream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

/// Unbiased integer in [0, n). Rejection sampling on raw 64-bit draws, so the
/// sequence is identical across standard libraries.
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("empty range");
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

inline const Portrait &uniform_sample(const FiniteTreeGroup &G, Rng &rng) {
  return G.element(uniform_below(rng, G.size()));
}

struct GoodnessOfFit {
  double statistic;
  double degrees_of_freedom;
  double p_value;
};

/// Pearson chi-square test of observed counts against expected probabilities.
inline GoodnessOfFit chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.size() < 2) throw std::invalid_argument("bad test shape");
  double total = 0;
  for (auto c : observed) total += static_cast<double>(c);
  double stat = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expected[i] * total;
    const double diff = static_cast<double>(observed[i]) - e;
    stat += diff * diff / e;
  }
  const double dof = static_cast<double>(observed.size() - 1);
  boost::math::chi_squared dist(dof);
  return {stat, dof, boost::math::cdf(boost::math::complement(dist, stat))};
}

/// Chi-square test of `draw` against the uniform distribution on G.
template <typename Draw>
GoodnessOfFit uniformity_test(const FiniteTreeGroup &G, std::size_t draws, Draw &&draw) {
  std::vector<std::uint64_t> counts(G.size(), 0);
  for (std::size_t i = 0; i < draws; ++i) {
    auto idx = G.find(draw());
    if (!idx) throw WitnessViolation("sampler produced an element outside the group");
    ++counts[*idx];
  }
  std::vector<double> expected(G.size(), 1.0 / static_cast<double>(G.size()));
  return chi_square_test(counts, expected);
}

}  // namespace treegroups

#endif  // TREEGROUPS_SAMPLING_HPP
