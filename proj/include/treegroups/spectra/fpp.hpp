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

#ifndef TREEGROUPS_SPECTRA_FPP_HPP
#define TREEGROUPS_SPECTRA_FPP_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "treegroups/spec.hpp"

namespace treegroups {

/// Wilson score interval for a binomial proportion at z standard errors.
struct SampledProportion {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double estimate = 0;
  double low = 0;
  double high = 0;
  double z = 4;
};

inline SampledProportion sampled_proportion(std::uint64_t successes, std::uint64_t trials, double z = 4) {
  SampledProportion s{successes, trials, 0, 0, 1, z};
  if (trials == 0) return s;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  s.estimate = p;
  s.low = std::max(0.0, centre - half);
  s.high = std::min(1.0, centre + half);
  return s;
}

inline bool contains(const SampledProportion &s, const ExactFraction &q) {
  const double x = to_double(q);
  return s.low <= x && x <= s.high;
}

/// #{g in pi_k(G) : X_k(g) > 0} / |pi_k(G)|. Counted over pi_n(G) itself:
/// every element of pi_k(G) has the same number of lifts, so the proportion
/// is the same.
inline ExactFraction fpp_at_level(const FiniteTreeGroup &G, int k) {
  if (k < 0 || k > G.depth()) throw RangeError("level beyond group depth");
  std::size_t fixing = 0;
  for (const auto &g : G.elements())
    if (fixed_count(g, k) > 0) ++fixing;
  return make_fraction(fixing, G.size());
}

struct FppLevel {
  int level;
  BigInt count_fixing;  // over pi_level(G); zero when sampled
  BigInt order;         // |pi_level(G)|, 0 when unknown
  ExactFraction p;      // exact value; the point estimate when sampled
  std::optional<SampledProportion> sampled;
  bool pass;            // p >= bound (for sampled levels: upper CI end >= bound)
};

struct FPPReport {
  std::string spec_id;
  std::vector<FppLevel> levels;
  bool monotone = true;
  ExactFraction bound = 0;
  std::string bound_source;

  bool exact() const {
    for (const auto &l : levels)
      if (l.sampled) return false;
    return true;
  }
  bool pass() const {
    if (!monotone) return false;
    for (const auto &l : levels)
      if (!l.pass) return false;
    return true;
  }
};

/// Exact per-level report for levels 1..depth of an enumerated group.
inline FPPReport fpp_report(const FiniteTreeGroup &G, std::string spec_id, ExactFraction bound = 0,
                            std::string bound_source = "none") {
  FPPReport r{std::move(spec_id), {}, true, std::move(bound), std::move(bound_source)};
  std::vector<std::size_t> fixing(G.depth() + 1, 0);
  for (const auto &g : G.elements()) {
    const auto x = fixed_counts(g);
    for (int k = 1; k <= G.depth(); ++k)
      if (x[k] > 0) ++fixing[k];
  }
  for (int k = 1; k <= G.depth(); ++k) {
    const BigInt order = G.truncated(k).size();
    const ExactFraction p = make_fraction(fixing[k], G.size());
    // p = fixing / |G| = count_fixing / |pi_k(G)|
    const BigInt count = numerator_of(p * order);
    r.levels.push_back({k, count, order, p, std::nullopt, p >= r.bound});
    if (k > 1 && p > r.levels[k - 2].p) r.monotone = false;
  }
  return r;
}

/// FPP report from a spec: exact while pi_k(G) fits under `cap`, then
/// sampled with `trials` uniform draws and a 4-sigma Wilson interval.
inline FPPReport fpp_report(const GroupSpec &spec, int depth, std::size_t cap, std::uint64_t trials, std::uint64_t seed,
                            ExactFraction bound = 0, std::string bound_source = "none") {
  std::optional<FiniteTreeGroup> G;
  int exact_depth = depth;
  while (exact_depth >= 1) {
    try {
      G = materialize(spec, exact_depth, cap);
      break;
    } catch (const CapacityError &) {
      --exact_depth;
    }
  }
  FPPReport r{spec.family_name(), {}, true, bound, std::move(bound_source)};
  if (G) r = fpp_report(*G, spec.family_name(), bound, r.bound_source);
  if (exact_depth == depth) return r;
  const auto sampler = make_sampler(spec, depth, cap);
  Rng rng = substream(seed, 0);
  std::vector<std::uint64_t> fixing(depth + 1, 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto x = fixed_counts(sampler.draw(rng));
    for (int k = 1; k <= depth; ++k)
      if (x[k] > 0) ++fixing[k];
  }
  for (int k = std::max(exact_depth, 0) + 1; k <= depth; ++k) {
    auto s = sampled_proportion(fixing[k], trials);
    const ExactFraction p = make_fraction(fixing[k], std::max<std::uint64_t>(trials, 1));
    BigInt order = 0;  // 0: not known without enumeration
    if (k == depth) order = sampler.order;
    else if (auto c = closed_form_log_order(spec, k)) order = c->expand().value_or(0);
    r.levels.push_back({k, 0, order, p, s, s.high >= to_double(r.bound)});
    // monotonicity of sampled levels is checked on interval overlap only
    if (r.levels.size() > 1) {
      const auto &prev = r.levels[r.levels.size() - 2];
      const double prev_high = prev.sampled ? prev.sampled->high : to_double(prev.p);
      if (s.low > prev_high) r.monotone = false;
    }
  }
  return r;
}

}  // namespace treegroups

#endif  // TREEGROUPS_SPECTRA_FPP_HPP
