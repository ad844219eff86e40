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

#ifndef TREEGROUPS_CONSTRUCTIONS_AFFINE_HPP
#define TREEGROUPS_CONSTRUCTIONS_AFFINE_HPP

#include <numeric>
#include <string>
#include <vector>

#include "treegroups/constructions/pattern.hpp"

namespace treegroups {

/// z -> a z + b on Z/dZ, with a a unit.
struct AffineMap {
  int d;
  int a;
  int b;

  AffineMap(int modulus, int unit, int shift) : d(modulus), a(unit), b(shift) {
    if (d < 2) throw std::invalid_argument("modulus must be >= 2");
    if (a < 0 || a >= d || b < 0 || b >= d) throw std::invalid_argument("affine coefficients out of range");
    if (std::gcd(a, d) != 1) throw std::invalid_argument("a must be a unit mod d");
  }

  int operator()(int z) const { return static_cast<int>((static_cast<long long>(a) * z + b) % d); }
  bool is_translation() const { return a == 1; }

  std::vector<int> fixed_points() const {
    std::vector<int> out;
    for (int z = 0; z < d; ++z)
      if ((*this)(z) == z) out.push_back(z);
    return out;
  }

  /// Letters of the tree are identified with Z/dZ by the identity map.
  Perm as_perm() const {
    std::vector<int> images(d);
    for (int z = 0; z < d; ++z) images[z] = (*this)(z);
    return Perm::from_ints(images);
  }
};

struct AffineElement {
  AffineMap map;
  std::vector<int> fixed_points;
  bool translation;
};

/// Aff(d) with per-map fixed points, ordered by (a, b).
struct AffineGroup {
  int d;
  std::vector<AffineElement> elements;

  std::vector<int> units() const {
    std::vector<int> out;
    for (int a = 1; a < d; ++a)
      if (std::gcd(a, d) == 1) out.push_back(a);
    return out;
  }
};

inline AffineGroup affine_group(int d) {
  if (d < 2) throw std::invalid_argument("degree must be >= 2");
  AffineGroup g{d, {}};
  for (int a = 1; a < d; ++a) {
    if (std::gcd(a, d) != 1) continue;
    for (int b = 0; b < d; ++b) {
      AffineMap m(d, a, b);
      g.elements.push_back({m, m.fixed_points(), m.is_translation()});
    }
  }
  return g;
}

enum class AffinePart { G, H };

inline std::string to_string(AffinePart p) { return p == AffinePart::G ? "G" : "H"; }

/// Depth-1 pattern: Aff(d) for part G, the translations for part H.
inline PatternSet affine_pattern(Degree d, AffinePart part) {
  std::vector<Portrait> allowed;
  for (const auto &e : affine_group(d).elements) {
    if (part == AffinePart::H && !e.translation) continue;
    allowed.push_back(Portrait::from_labels(d, 1, {e.map.as_perm()}));
  }
  return PatternSet(d, 1, std::move(allowed));
}

/// The finite-type group with depth-1 pattern Aff(d) (G) or translations (H), at the given depth.
inline FiniteTreeGroup affine_model(Degree d, int depth, AffinePart part, std::size_t cap = FiniteTreeGroup::kDefaultCap) {
  if (depth < 1) throw RangeError("affine model needs depth >= 1");
  return pattern_group(affine_pattern(d, part), depth, cap);
}

}  // namespace treegroups

#endif  // TREEGROUPS_CONSTRUCTIONS_AFFINE_HPP
