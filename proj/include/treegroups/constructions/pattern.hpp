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

#ifndef TREEGROUPS_CONSTRUCTIONS_PATTERN_HPP
#define TREEGROUPS_CONSTRUCTIONS_PATTERN_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "treegroups/group.hpp"

namespace treegroups {

/// A subgroup P of Aut T^D, the allowed depth-D windows of a group of finite type.
class PatternSet {
 public:
  /// `allowed` must be closed under products and inverses and contain the identity.
  PatternSet(Degree d, int pattern_depth, std::vector<Portrait> allowed)
      : group_(d, pattern_depth, {}, std::move(allowed)) {
    if (pattern_depth < 1) throw RangeError("pattern depth must be >= 1");
    if (!group_.contains(Portrait::identity(d, pattern_depth)))
      throw PreconditionError("pattern set lacks the identity");
    for (const auto &p : group_.elements()) {
      if (!group_.contains(invert(p))) throw PreconditionError("pattern set not closed under inverses");
      for (const auto &q : group_.elements())
        if (!group_.contains(compose(p, q))) throw PreconditionError("pattern set not closed under products");
    }
  }

  /// The subgroup generated by `generators`.
  static PatternSet generated_by(Degree d, int pattern_depth, const std::vector<Portrait> &generators) {
    return PatternSet(d, pattern_depth, enumerate_closure(d, pattern_depth, generators).elements());
  }

  /// pi_D of an enumerated group, which is automatically a valid pattern set.
  static PatternSet from_group(const FiniteTreeGroup &G, int pattern_depth) {
    return PatternSet(G.degree(), pattern_depth, G.truncated(pattern_depth).elements());
  }

  Degree degree() const { return group_.degree(); }
  int pattern_depth() const { return group_.depth(); }
  const std::vector<Portrait> &allowed() const { return group_.elements(); }
  const FiniteTreeGroup &as_group() const { return group_; }
  bool allows(const Portrait &window) const { return group_.contains(window); }

  /// True when every level-1 section of an allowed window, truncated to
  /// depth D-1, is again the truncation of an allowed window. Then every
  /// window top met during extension has exactly |ker(P -> pi_{D-1}P)| completions.
  bool sections_descend() const {
    const int D = pattern_depth();
    const auto tops = group_.truncated(D - 1);
    for (const auto &p : allowed())
      for (int j = 0; j < degree(); ++j)
        if (!tops.contains(section(p, Vertex({static_cast<std::uint8_t>(j)}), D - 1))) return false;
    return true;
  }

 private:
  FiniteTreeGroup group_;
};

/// pi_n(G_P) = depth-n portraits whose depth-D sections at every vertex of
/// level <= n-D lie in P. Built level by level: each new level of labels is
/// chosen window by window from the completions P allows, so no invalid
/// portrait is ever generated.
inline FiniteTreeGroup pattern_group(const PatternSet &P, int n, std::size_t cap = FiniteTreeGroup::kDefaultCap) {
  const int D = P.pattern_depth();
  const int d = P.degree();
  if (n < D) throw RangeError("pattern group depth must be >= pattern depth");
  // completions: window top (depth D-1) -> bottom-level label blocks
  std::unordered_map<std::string, std::vector<std::vector<std::uint8_t>>> completions;
  const std::size_t bottom_offset = internal_vertex_count(d, D - 1) * d;
  for (const auto &p : P.allowed()) {
    auto flat = p.flat_labels();
    completions[canonical_key(truncate(p, D - 1))].emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(bottom_offset),
                                                                flat.end());
  }
  if (P.sections_descend()) {
    // every window top has |K| completions, K = ker(P -> pi_{D-1}(P))
    const BigInt kernel = BigInt(P.allowed().size()) / P.as_group().truncated(D - 1).size();
    BigInt order = P.allowed().size();
    for (int m = D; m < n && order <= cap; ++m) order *= ipow(kernel, level_size(d, m + 1 - D));
    if (order > cap) throw CapacityError("pattern group of order " + order.str() + " exceeds cap " + std::to_string(cap), 0);
  }
  std::vector<Portrait> current = P.allowed();
  if (current.size() > cap) throw CapacityError("pattern group exceeds cap", current.size());
  for (int m = D; m < n; ++m) {
    const int r = m + 1 - D;
    const std::size_t windows = level_size(d, r);
    std::vector<Portrait> next;
    for (const auto &w : current) {
      std::vector<const std::vector<std::vector<std::uint8_t>> *> choices(windows);
      bool dead = false;
      for (std::size_t u = 0; u < windows && !dead; ++u) {
        auto it = completions.find(canonical_key(section(w, Vertex::from_rank(d, r, u), D - 1)));
        if (it == completions.end()) dead = true;
        else choices[u] = &it->second;
      }
      if (dead) continue;
      auto base = w.flat_labels();
      std::vector<std::uint8_t> flat(base.begin(), base.end());
      const std::size_t block = level_size(d, D - 1) * d;
      flat.resize(flat.size() + windows * block);
      const std::size_t level_offset = base.size();
      std::vector<std::size_t> odometer(windows, 0);
      for (std::size_t u = 0; u < windows; ++u)
        std::copy((*choices[u])[0].begin(), (*choices[u])[0].end(), flat.begin() + static_cast<std::ptrdiff_t>(level_offset + u * block));
      while (true) {
        next.push_back(Portrait::from_flat(P.degree(), m + 1, flat));
        if (next.size() > cap) throw CapacityError("pattern group exceeds cap " + std::to_string(cap), next.size() - 1);
        std::size_t u = windows;
        while (u-- > 0) {
          if (++odometer[u] < choices[u]->size()) break;
          odometer[u] = 0;
        }
        // rewrite the blocks that changed (u..end); u wrapped past 0 means done
        if (u == static_cast<std::size_t>(-1)) break;
        for (std::size_t x = u; x < windows; ++x) {
          const auto &blk = (*choices[x])[odometer[x]];
          std::copy(blk.begin(), blk.end(), flat.begin() + static_cast<std::ptrdiff_t>(level_offset + x * block));
        }
      }
    }
    current = std::move(next);
  }
  return FiniteTreeGroup(P.degree(), n, {}, std::move(current));
}

struct FiniteTypeVerdict {
  int pattern_depth;
  /// Depth of the enumerated quotient the verdict is based on.
  int evidence_depth;
  /// pi_n(G) equals the pattern group of pi_D(G) at depth n.
  bool pattern_equal;
  /// For each v in level 1, the depth-(n-1) sections at v of rist_K(v),
  /// K = St_G(D-1), cover pi_{n-1}(K).
  bool branching;
  bool finite_type() const { return pattern_equal && branching; }
  std::string note() const { return "depth-" + std::to_string(evidence_depth) + " evidence"; }
};

inline FiniteTypeVerdict finite_type_check(const FiniteTreeGroup &G, int D, std::size_t cap = FiniteTreeGroup::kDefaultCap) {
  const int n = G.depth();
  if (D < 1 || n < D + 1) throw RangeError("finite type check needs 1 <= D and depth >= D + 1");
  FiniteTypeVerdict verdict{D, n, false, false};
  const auto P = PatternSet::from_group(G, D);
  try {
    verdict.pattern_equal = pattern_group(P, n, std::max(cap, G.size() + 1)).same_elements(G);
  } catch (const CapacityError &) {
    verdict.pattern_equal = false;  // pattern group strictly larger than G
  }
  const auto K = level_stabilizer(G, D - 1);
  const auto target = K.truncated(n - 1);
  verdict.branching = true;
  for (int j = 0; j < G.degree() && verdict.branching; ++j) {
    const Vertex v({static_cast<std::uint8_t>(j)});
    const auto rist = rigid_vertex_stabilizer(K, v);
    std::unordered_set<std::string> covered;
    for (const auto &r : rist.elements()) covered.insert(canonical_key(section(r, v, n - 1)));
    for (const auto &k : target.elements())
      if (!covered.count(canonical_key(k))) {
        verdict.branching = false;
        break;
      }
  }
  return verdict;
}

}  // namespace treegroups

#endif  // TREEGROUPS_CONSTRUCTIONS_PATTERN_HPP
