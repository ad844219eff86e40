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

#ifndef TREEGROUPS_SPECTRA_BAD_COSETS_HPP
#define TREEGROUPS_SPECTRA_BAD_COSETS_HPP

#include <numeric>
#include <optional>
#include <vector>

#include "treegroups/constructions/affine.hpp"
#include "treegroups/group.hpp"

namespace treegroups {

struct BadCosetReport {
  int d;
  BigInt q_size;
  /// Transversal indices (into `representatives`) of the cosets in M.
  std::vector<std::size_t> M;
  std::vector<Portrait> representatives;
  ExactFraction ratio;
  /// pi_1(candidate) == pi_1(G) for a supplied G_H candidate.
  std::optional<bool> complete_monodromy;
};

/// Q = pi_1(G)/pi_1(H) and M = cosets all of whose permutations fix a letter.
inline BadCosetReport bad_cosets(const FiniteTreeGroup &G, const FiniteTreeGroup &H,
                                 const FiniteTreeGroup *gh_candidate = nullptr) {
  if (G.depth() < 1 || H.depth() < 1) throw RangeError("bad cosets need depth >= 1");
  const auto G1 = G.truncated(1);
  const auto H1 = H.truncated(1);
  if (!is_normal_in(G1, H1)) throw PreconditionError("pi_1(H) is not normal in pi_1(G)");
  const auto cosets = coset_decomposition(G1, H1);
  std::vector<char> all_fix(cosets.transversal().size(), 1);
  for (const auto &g : G1.elements())
    if (!g.label(Vertex::root()).has_fixed_point()) all_fix[cosets.coset_index(g)] = 0;
  BadCosetReport r{G.degree(), cosets.index(), {}, cosets.transversal(), 0, std::nullopt};
  for (std::size_t i = 0; i < all_fix.size(); ++i)
    if (all_fix[i]) r.M.push_back(i);
  r.ratio = make_fraction(r.M.size(), cosets.index());
  if (gh_candidate) r.complete_monodromy = gh_candidate->truncated(1).same_elements(G1);
  return r;
}

/// #M and #M/|Q| for the affine model, by brute force over Aff(d): a unit a
/// is bad when every map z -> a z + b has a fixed point.
struct AffineBadCount {
  int d;
  int q_size;     // phi(d)
  int bad_count;  // #M
  ExactFraction ratio;
};

inline AffineBadCount affine_bad_cosets(int d) {
  const auto aff = affine_group(d);
  std::vector<int> units = aff.units();
  std::vector<char> bad(d, 1);
  for (const auto &e : aff.elements)
    if (e.fixed_points.empty()) bad[e.map.a] = 0;
  int count = 0;
  for (int a : units) count += bad[a];
  return {d, static_cast<int>(units.size()), count, make_fraction(count, static_cast<long>(units.size()))};
}

struct EulerValues {
  BigInt bad_count;      // d prod_{p | d} (1 - 2/p)
  ExactFraction fpp_bound;  // prod_{p | d} (p - 2)/(p - 1)
};

inline std::vector<int> prime_divisors(int d) {
  std::vector<int> out;
  for (int p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    out.push_back(p);
    while (d % p == 0) d /= p;
  }
  if (d > 1) out.push_back(d);
  return out;
}

inline EulerValues euler_formulas(int d) {
  if (d < 2) throw std::invalid_argument("degree must be >= 2");
  ExactFraction count = d, bound = 1;
  for (int p : prime_divisors(d)) {
    count *= make_fraction(p - 2, p);
    bound *= make_fraction(p - 2, p - 1);
  }
  return {numerator_of(count), bound};
}

/// Witness path of one element: a fixed vertex at the deepest level. Its
/// prefixes are fixed vertices at every shallower level.
struct MonodromyWitness {
  std::size_t element;
  Vertex fixed_leaf;
};

struct MonodromyBound {
  ExactFraction bound;
  std::size_t checked = 0;
  std::vector<MonodromyWitness> witnesses;
};

/// #M/|Q| for (G, H), and the finite-depth mechanism behind it: every element
/// of `gh` lying over a coset in M fixes a vertex at every level <= depth.
/// A missing witness throws WitnessViolation.
inline MonodromyBound monodromy_bound(const FiniteTreeGroup &gh, const FiniteTreeGroup &H, const BadCosetReport &bad) {
  MonodromyBound out{bad.ratio, 0, {}};
  if (bad.M.empty()) return out;
  const auto G1 = gh.truncated(1);
  const auto H1 = H.truncated(1);
  std::vector<char> in_m(bad.representatives.size(), 0);
  for (auto i : bad.M) in_m[i] = 1;
  // coset of pi_1(g): the representative r with pi_1(g) r^-1 in pi_1(H)
  auto coset_of = [&](const Portrait &top) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < bad.representatives.size(); ++i)
      if (H1.contains(compose(top, invert(bad.representatives[i])))) return i;
    return std::nullopt;
  };
  const int n = gh.depth();
  for (std::size_t e = 0; e < gh.size(); ++e) {
    const auto &g = gh.element(e);
    const auto q = coset_of(truncate(g, 1));
    if (!q) throw ContainmentError("element of G_H outside the cosets of pi_1(H)");
    if (!in_m[*q]) continue;
    ++out.checked;
    const auto image = level_action(g, n);
    std::optional<std::size_t> leaf;
    for (std::size_t r = 0; r < image.size() && !leaf; ++r)
      if (image[r] == r) leaf = r;
    if (!leaf) throw WitnessViolation("element over a bad coset fixes no vertex at level " + std::to_string(n));
    out.witnesses.push_back({e, Vertex::from_rank(gh.degree(), n, *leaf)});
  }
  return out;
}

}  // namespace treegroups

#endif  // TREEGROUPS_SPECTRA_BAD_COSETS_HPP
