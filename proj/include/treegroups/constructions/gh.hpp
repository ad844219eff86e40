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

#ifndef TREEGROUPS_CONSTRUCTIONS_GH_HPP
#define TREEGROUPS_CONSTRUCTIONS_GH_HPP

#include <vector>

#include "treegroups/group.hpp"

namespace treegroups {

/// The section-difference filter behind gh_group, without the closure check:
/// {g in G : g|_v (g|_w)^-1 in H for all v, w}, at finite depth.
///
/// A pair (v, w) is compared at depth k = n - max(|v|, |w|), the largest
/// depth at which both sections exist. Since "a b^-1 in pi_k(H)" is an
/// equivalence relation, it suffices to compare every vertex of level
/// <= n-k with the root at each depth k.
inline FiniteTreeGroup gh_filter(const FiniteTreeGroup &G, const FiniteTreeGroup &H) {
  if (G.degree() != H.degree() || G.depth() != H.depth()) throw ShapeError("G and H differ in shape");
  if (!H.is_subset_of(G)) throw ContainmentError("H is not contained in G");
  if (G.depth() >= 1 && !is_normal_in(G.truncated(1), H.truncated(1)))
    throw PreconditionError("pi_1(H) is not normal in pi_1(G)");
  const int n = G.depth();
  const int d = G.degree();
  std::vector<FiniteTreeGroup> h_trunc;
  for (int k = 0; k <= n; ++k) h_trunc.push_back(H.truncated(k));
  return G.filter([&](const Portrait &g) {
    for (int k = 1; k < n; ++k) {
      const Portrait root_inv = invert(truncate(g, k));
      for (int level = 1; level <= n - k; ++level) {
        for (std::size_t r = 0; r < level_size(d, level); ++r) {
          const Portrait s = section(g, Vertex::from_rank(d, level, r), k);
          if (!h_trunc[k].contains(compose(s, root_inv))) return false;
        }
      }
    }
    return true;
  });
}

/// Depth-n shadow of G_H. The result contains pi_n(G_H) and may be larger.
///
/// Requires H <= G and pi_1(H) normal in pi_1(G). Full normality of H in G
/// is not demanded up front (the affine pattern models are normal only at
/// level 1); instead the filtered set must be closed under products,
/// otherwise PreconditionError is thrown.
inline FiniteTreeGroup gh_group(const FiniteTreeGroup &G, const FiniteTreeGroup &H) {
  auto result = gh_filter(G, H);
  if (!result.is_closed()) throw PreconditionError("G_H filter is not closed under products: H is not normal in G");
  return result;
}

}  // namespace treegroups

#endif  // TREEGROUPS_CONSTRUCTIONS_GH_HPP
