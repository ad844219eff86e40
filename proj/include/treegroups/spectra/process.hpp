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

#ifndef TREEGROUPS_SPECTRA_PROCESS_HPP
#define TREEGROUPS_SPECTRA_PROCESS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "treegroups/spec.hpp"
#include "treegroups/spectra/fpp.hpp"

namespace treegroups {

/// (1/|G|) sum_g X_k(g). Equals the number of orbits on level k (Burnside).
inline ExactFraction burnside_mean(const FiniteTreeGroup &G, int k) {
  if (k < 0 || k > G.depth()) throw RangeError("level beyond group depth");
  BigInt sum = 0;
  for (const auto &g : G.elements()) sum += fixed_count(g, k);
  return make_fraction(sum, G.size());
}

/// Exact fixed-point process statistics of an enumerated group.
struct ProcessExact {
  std::vector<ExactFraction> mean;  // E[X_k], k = 0..depth
  ExactFraction event;              // P[X_k = d for 1 <= k <= depth]
};

inline ProcessExact process_exact(const FiniteTreeGroup &G) {
  const int n = G.depth();
  const std::size_t d = G.degree();
  std::vector<BigInt> sums(n + 1, 0);
  std::size_t event = 0;
  for (const auto &g : G.elements()) {
    const auto x = fixed_counts(g);
    bool all_d = true;
    for (int k = 0; k <= n; ++k) {
      sums[k] += x[k];
      if (k >= 1 && x[k] != d) all_d = false;
    }
    if (all_d) ++event;
  }
  ProcessExact out;
  for (const auto &s : sums) out.mean.push_back(make_fraction(s, G.size()));
  out.event = make_fraction(event, G.size());
  return out;
}

struct LevelMean {
  double mean;
  double low;   // mean - 4 standard errors
  double high;  // mean + 4 standard errors
};

struct ProcessReport {
  std::string spec_id;
  int d;
  int depth;
  std::uint64_t trials;
  std::uint64_t seed;
  std::string sampler;
  /// X_1..X_depth of each draw (X_0 = 1 is implicit).
  std::vector<std::vector<std::uint32_t>> trajectories;
  SampledProportion event;       // empirical P[X_k = d for 1 <= k <= depth]
  std::vector<LevelMean> mean;   // k = 1..depth
  std::optional<ProcessExact> exact;
};

/// `trials` exactly uniform draws from pi_depth(G). Exact statistics are
/// added when |pi_depth(G)| <= cap. Refuses (CapacityError) when no
/// validated sampler exists within the cap.
inline ProcessReport process_sample(const GroupSpec &spec, int depth, std::uint64_t trials, std::uint64_t seed,
                                    std::size_t cap = FiniteTreeGroup::kDefaultCap) {
  if (depth < 1) throw RangeError("process needs depth >= 1");
  const auto sampler = make_sampler(spec, depth, cap);
  const int d = spec.degree();
  ProcessReport r{spec.family_name(), d, depth, trials, seed, sampler.strategy, {}, {}, {}, std::nullopt};
  Rng rng = substream(seed, 1);
  std::vector<double> sum(depth + 1, 0), sum_sq(depth + 1, 0);
  std::uint64_t event = 0;
  r.trajectories.reserve(trials);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto x = fixed_counts(sampler.draw(rng));
    std::vector<std::uint32_t> traj(x.begin() + 1, x.end());
    bool all_d = true;
    for (int k = 1; k <= depth; ++k) {
      const double v = static_cast<double>(x[k]);
      sum[k] += v;
      sum_sq[k] += v * v;
      if (x[k] != static_cast<std::size_t>(d)) all_d = false;
    }
    if (all_d) ++event;
    r.trajectories.push_back(std::move(traj));
  }
  r.event = sampled_proportion(event, trials);
  const double n = static_cast<double>(std::max<std::uint64_t>(trials, 1));
  for (int k = 1; k <= depth; ++k) {
    const double m = sum[k] / n;
    const double var = std::max(0.0, sum_sq[k] / n - m * m);
    const double se = std::sqrt(var / n);
    r.mean.push_back({m, m - 4 * se, m + 4 * se});
  }
  if (sampler.order <= cap) r.exact = process_exact(materialize(spec, depth, cap));
  return r;
}

/// The positive-measure set from the fixed-point process argument:
/// {h g_{tau^rho} : h in St_G(2), rho in Sym(d)}, checked element by element.
struct TheoremFamily {
  std::size_t size = 0;
  ExactFraction measure;   // size / |pi_n(G)|
  ExactFraction expected;  // (d-1)!/d^d = d!/(d d^d)
  bool inside_group = true;
  bool all_fixed_d = true;  // X_k = d for 1 <= k <= depth - 1
  std::optional<Portrait> violation;
};

inline ExactFraction theorem_bound(int d) {
  return make_fraction(factorial(d - 1), ipow(BigInt(d), static_cast<unsigned long long>(d)));
}

inline TheoremFamily theorem_family(const LemmaGroups &L) {
  const int d = L.spec.degree;
  const int n = L.G.depth();
  const auto St2 = level_stabilizer(L.G, 2);
  TheoremFamily out;
  out.expected = theorem_bound(d);
  std::unordered_set<std::string> seen;
  const BigInt perms = factorial(d);
  for (std::uint64_t r = 0; r < perms; ++r) {
    const Portrait g_rho = lemma_generator(L.spec, Perm::from_rank(d, r), n);
    for (const auto &h : St2.elements()) {
      Portrait x = compose(h, g_rho);
      if (!seen.insert(canonical_key(x)).second) continue;
      if (!L.G.contains(x)) out.inside_group = false;
      const auto counts = fixed_counts(x);
      for (int k = 1; k <= n - 1; ++k)
        if (counts[k] != static_cast<std::size_t>(d)) {
          out.all_fixed_d = false;
          if (!out.violation) out.violation = x;
        }
    }
  }
  out.size = seen.size();
  out.measure = make_fraction(out.size, L.G.size());
  return out;
}

}  // namespace treegroups

#endif  // TREEGROUPS_SPECTRA_PROCESS_HPP
