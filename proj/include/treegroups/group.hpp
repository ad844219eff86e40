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

#ifndef TREEGROUPS_GROUP_HPP
#define TREEGROUPS_GROUP_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "treegroups/errors.hpp"
#include "treegroups/exact.hpp"
#include "treegroups/portrait.hpp"

namespace treegroups {

/// Partition of a level into orbits; each orbit sorted, orbits ordered by first member.
using LevelPartition = std::vector<std::vector<Vertex>>;

/// An exactly enumerated finite group of depth-n tree automorphisms,
/// typically a congruence quotient pi_n(G). Immutable; copies share storage.
class FiniteTreeGroup {
 public:
  static constexpr std::size_t kDefaultCap = 10'000'000;

  /// Takes ownership of an already closed element list. Generators may be
  /// empty when unknown (filtered subgroups); algorithms then fall back to
  /// all elements.
  FiniteTreeGroup(Degree d, int depth, std::vector<Portrait> generators, std::vector<Portrait> elements)
      : data_(std::make_shared<Data>(d, depth)) {
    auto &data = *data_;
    for (const auto &g : generators) check_shape(g);
    data.generators = std::move(generators);
    data.index.reserve(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
      check_shape(elements[i]);
      if (!data.index.emplace(canonical_key(elements[i]), static_cast<std::uint32_t>(i)).second)
        throw std::invalid_argument("duplicate element in group");
    }
    data.elements = std::move(elements);
    if (data.elements.empty()) throw std::invalid_argument("a group has at least the identity");
  }

  Degree degree() const { return data_->d; }
  int depth() const { return data_->depth; }
  std::size_t size() const { return data_->elements.size(); }
  BigInt order() const { return BigInt(size()); }
  const std::vector<Portrait> &elements() const { return data_->elements; }
  const std::vector<Portrait> &generators() const { return data_->generators; }
  const Portrait &element(std::size_t i) const { return data_->elements.at(i); }

  std::optional<std::size_t> find(const Portrait &g) const {
    if (g.degree() != degree() || g.depth() != depth()) return std::nullopt;
    return find_key(canonical_key(g));
  }

  std::optional<std::size_t> find_key(const std::string &key) const {
    auto it = data_->index.find(key);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const Portrait &g) const { return find(g).has_value(); }

  /// Generators if known; otherwise a small generating set found by
  /// doubling (at most log2 |G| elements), or every element if the element
  /// list is not closed.
  const std::vector<Portrait> &generating_set() const {
    if (!data_->generators.empty()) return data_->generators;
    const auto &derived = derive_generators();
    return derived ? *derived : data_->elements;
  }

  /// Elements satisfying pred, in this group's order. The caller asserts the result is a subgroup.
  template <typename Pred>
  FiniteTreeGroup filter(Pred &&pred) const {
    std::vector<Portrait> kept;
    for (const auto &g : elements())
      if (pred(g)) kept.push_back(g);
    return FiniteTreeGroup(degree(), depth(), {}, std::move(kept));
  }

  /// pi_m of this group: distinct truncations, first-seen order.
  FiniteTreeGroup truncated(int m) const {
    if (m < 0 || m > depth()) throw RangeError("truncation depth out of range");
    if (m == depth()) return *this;
    std::vector<Portrait> gens, elems;
    std::unordered_set<std::string> seen;
    for (const auto &g : generators()) gens.push_back(truncate(g, m));
    for (const auto &g : elements()) {
      auto t = truncate(g, m);
      if (seen.insert(canonical_key(t)).second) elems.push_back(std::move(t));
    }
    return FiniteTreeGroup(degree(), m, std::move(gens), std::move(elems));
  }

  /// Whether the element list is closed under products. With known
  /// generators this checks g s for every element g and generator s;
  /// otherwise it is decided while deriving a generating set.
  bool is_closed() const {
    if (!contains(Portrait::identity(degree(), depth()))) return false;
    if (data_->generators.empty()) return derive_generators().has_value();
    for (const auto &g : elements())
      for (const auto &s : data_->generators)
        if (!contains(compose(g, s))) return false;
    return true;
  }

  bool same_elements(const FiniteTreeGroup &other) const {
    if (other.degree() != degree() || other.depth() != depth() || other.size() != size()) return false;
    for (const auto &g : other.elements())
      if (!contains(g)) return false;
    return true;
  }

  bool is_subset_of(const FiniteTreeGroup &other) const {
    for (const auto &g : elements())
      if (!other.contains(g)) return false;
    return true;
  }

  /// Exact orbit partition of level k (cached).
  const LevelPartition &orbits(int k) const {
    if (k < 0 || k > depth()) throw RangeError("level out of range");
    std::lock_guard<std::mutex> lock(data_->cache_mutex);
    auto it = data_->orbit_cache.find(k);
    if (it != data_->orbit_cache.end()) return it->second;
    return data_->orbit_cache.emplace(k, compute_orbits(k)).first->second;
  }

 private:
  struct Data {
    Data(Degree d_, int depth_) : d(d_), depth(depth_) {}
    Degree d;
    int depth;
    std::vector<Portrait> generators;
    std::vector<Portrait> elements;
    std::unordered_map<std::string, std::uint32_t> index;
    std::mutex cache_mutex;
    std::map<int, LevelPartition> orbit_cache;
    std::mutex gens_mutex;
    bool derived_done = false;
    std::optional<std::vector<Portrait>> derived_generators;
  };

  /// Greedy generating set: take the first element outside the subgroup
  /// generated so far and extend the closure. Each step at least doubles the
  /// subgroup. nullopt when some product leaves the element list.
  const std::optional<std::vector<Portrait>> &derive_generators() const {
    std::lock_guard<std::mutex> lock(data_->gens_mutex);
    if (data_->derived_done) return data_->derived_generators;
    data_->derived_done = true;
    const auto &elems = data_->elements;
    std::vector<Portrait> gens;
    std::vector<char> reached(elems.size(), 0);
    std::vector<std::size_t> subgroup;
    auto identity = find(Portrait::identity(degree(), depth()));
    if (!identity) return data_->derived_generators;
    reached[*identity] = 1;
    subgroup.push_back(*identity);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (reached[i]) continue;
      gens.push_back(elems[i]);
      // <C, x> is the closure of C x under right multiplication by all generators
      std::vector<std::size_t> queue;
      auto visit = [&](const Portrait &p) {
        auto j = find(p);
        if (!j) return false;
        if (!reached[*j]) {
          reached[*j] = 1;
          queue.push_back(*j);
        }
        return true;
      };
      for (auto c : subgroup)
        if (!visit(compose(elems[c], gens.back()))) return data_->derived_generators;
      for (std::size_t q = 0; q < queue.size(); ++q)
        for (const auto &s : gens)
          if (!visit(compose(elems[queue[q]], s))) return data_->derived_generators;
      subgroup.insert(subgroup.end(), queue.begin(), queue.end());
    }
    data_->derived_generators = std::move(gens);
    return data_->derived_generators;
  }

  void check_shape(const Portrait &g) const {
    if (g.degree() != data_->d || g.depth() != data_->depth) throw ShapeError("element shape differs from group");
  }

  LevelPartition compute_orbits(int k) const {
    const std::size_t n = level_size(degree(), k);
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find_root = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto &s : generating_set()) {
      auto img = level_action(s, k);
      for (std::size_t r = 0; r < n; ++r) {
        auto a = find_root(static_cast<std::uint32_t>(r)), b = find_root(img[r]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    std::map<std::uint32_t, std::vector<Vertex>> by_root;
    for (std::size_t r = 0; r < n; ++r)
      by_root[find_root(static_cast<std::uint32_t>(r))].push_back(Vertex::from_rank(degree(), k, r));
    LevelPartition out;
    for (auto &[root, members] : by_root) out.push_back(std::move(members));
    return out;
  }

  std::shared_ptr<Data> data_;
};

/// pi_depth(<generators>) by breadth-first product closure. Each new
/// breadth-first layer is sorted by canonical key, so the element order
/// depends only on the generator set. Generators deeper than `depth` are
/// truncated.
inline FiniteTreeGroup enumerate_closure(Degree d, int depth, const std::vector<Portrait> &generators,
                                         std::size_t cap = FiniteTreeGroup::kDefaultCap) {
  if (cap == 0) throw std::invalid_argument("cap must be positive");
  std::vector<Portrait> gens;
  for (const auto &g : generators) {
    if (g.degree() != d) throw ShapeError("generator degree mismatch");
    if (g.depth() < depth) throw ShapeError("generator shallower than requested depth");
    gens.push_back(g.depth() == depth ? g : truncate(g, depth));
  }
  std::vector<Portrait> elements{Portrait::identity(d, depth)};
  std::unordered_set<std::string> seen{canonical_key(elements[0])};
  std::size_t layer_begin = 0;
  while (layer_begin < elements.size()) {
    const std::size_t layer_end = elements.size();
    std::vector<std::pair<std::string, Portrait>> fresh;
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto &s : gens) {
        Portrait p = compose(elements[i], s);
        std::string key = canonical_key(p);
        if (seen.insert(key).second) {
          if (seen.size() > cap) throw CapacityError("closure exceeds cap " + std::to_string(cap), seen.size() - 1);
          fresh.emplace_back(std::move(key), std::move(p));
        }
      }
    }
    std::sort(fresh.begin(), fresh.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    for (auto &f : fresh) elements.push_back(std::move(f.second));
    layer_begin = layer_end;
  }
  return FiniteTreeGroup(d, depth, std::move(gens), std::move(elements));
}

// ---------------------------------------------------------------------------
// Stabilizers

struct LevelStabilizer {
  int level;
};
struct VertexStabilizer {
  Vertex vertex;
};
struct RigidVertexStabilizer {
  Vertex vertex;
};
struct RigidLevelStabilizer {
  int level;
};
using StabilizerKind = std::variant<LevelStabilizer, VertexStabilizer, RigidVertexStabilizer, RigidLevelStabilizer>;

namespace detail {

inline bool labels_trivial_below(const Portrait &g, std::size_t first, std::size_t last) {
  const int d = g.degree();
  auto l = g.flat_labels();
  for (std::size_t v = first; v < last; ++v)
    for (int j = 0; j < d; ++j)
      if (l[v * d + j] != j) return false;
  return true;
}

/// True iff g has trivial labels at every internal vertex outside the subtree of v.
inline bool supported_below(const Portrait &g, const Vertex &v) {
  const int d = g.degree();
  auto l = g.flat_labels();
  const std::size_t vr = v.rank(d);
  std::size_t lo = vr, hi = vr + 1;  // subtree ranks at the current level
  for (int k = 0; k < g.depth(); ++k) {
    const std::size_t start = internal_vertex_count(d, k), width = level_size(d, k);
    for (std::size_t r = 0; r < width; ++r) {
      bool inside = k >= v.level() && r >= lo && r < hi;
      if (inside) continue;
      for (int j = 0; j < d; ++j)
        if (l[(start + r) * d + j] != j) return false;
    }
    if (k >= v.level()) {
      lo *= d;
      hi *= d;
    }
  }
  return true;
}

}  // namespace detail

inline FiniteTreeGroup level_stabilizer(const FiniteTreeGroup &G, int k) {
  if (k < 0 || k > G.depth()) throw RangeError("level out of range");
  const std::size_t upto = internal_vertex_count(G.degree(), k);
  return G.filter([&](const Portrait &g) { return detail::labels_trivial_below(g, 0, upto); });
}

inline FiniteTreeGroup vertex_stabilizer(const FiniteTreeGroup &G, const Vertex &v) {
  if (v.level() > G.depth()) throw RangeError("vertex deeper than group");
  v.check_letters(G.degree());
  return G.filter([&](const Portrait &g) { return apply_vertex(g, v) == v; });
}

/// rist_G(v): elements fixing every vertex that is not a descendant of v.
inline FiniteTreeGroup rigid_vertex_stabilizer(const FiniteTreeGroup &G, const Vertex &v) {
  if (v.level() > G.depth()) throw RangeError("vertex deeper than group");
  v.check_letters(G.degree());
  return G.filter([&](const Portrait &g) { return detail::supported_below(g, v); });
}

struct RigidLevelResult {
  FiniteTreeGroup group;
  /// The product of the rigid vertex stabilizers has order equal to the
  /// product of their orders.
  bool is_direct;
};

/// Rist_G(k): internal product of rist_G(v) over v in level k.
inline RigidLevelResult rigid_level_stabilizer(const FiniteTreeGroup &G, int k) {
  if (k < 0 || k > G.depth()) throw RangeError("level out of range");
  const int d = G.degree();
  std::vector<Portrait> current{Portrait::identity(G.degree(), G.depth())};
  BigInt factor_product = 1;
  for (std::size_t r = 0; r < level_size(d, k); ++r) {
    auto rist = rigid_vertex_stabilizer(G, Vertex::from_rank(d, k, r));
    factor_product *= rist.size();
    std::vector<Portrait> next;
    std::unordered_set<std::string> seen;
    for (const auto &x : current)
      for (const auto &y : rist.elements()) {
        auto p = compose(x, y);
        if (seen.insert(canonical_key(p)).second) next.push_back(std::move(p));
      }
    current = std::move(next);
  }
  const bool direct = BigInt(current.size()) == factor_product;
  for (const auto &g : current)
    if (!G.contains(g)) throw WitnessViolation("rigid level product left the group");
  return {FiniteTreeGroup(G.degree(), G.depth(), {}, std::move(current)), direct};
}

inline FiniteTreeGroup stabilizer(const FiniteTreeGroup &G, const StabilizerKind &kind) {
  return std::visit(
      [&](const auto &k) -> FiniteTreeGroup {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, LevelStabilizer>) return level_stabilizer(G, k.level);
        else if constexpr (std::is_same_v<K, VertexStabilizer>) return vertex_stabilizer(G, k.vertex);
        else if constexpr (std::is_same_v<K, RigidVertexStabilizer>) return rigid_vertex_stabilizer(G, k.vertex);
        else return rigid_level_stabilizer(G, k.level).group;
      },
      kind);
}

// ---------------------------------------------------------------------------
// Actions

inline const LevelPartition &orbits_on_level(const FiniteTreeGroup &G, int k) { return G.orbits(k); }

/// Entry k is true iff G is transitive on level k, for k = 0..depth.
inline std::vector<bool> level_transitivity(const FiniteTreeGroup &G) {
  std::vector<bool> out;
  for (int k = 0; k <= G.depth(); ++k) out.push_back(G.orbits(k).size() == 1);
  return out;
}

inline bool is_level_transitive(const FiniteTreeGroup &G) {
  auto t = level_transitivity(G);
  return std::all_of(t.begin(), t.end(), [](bool b) { return b; });
}

/// Finite-depth fractality: level-transitive, and for each v in level 1 the
/// depth-(n-1) sections of st_G(v) at v are exactly pi_{n-1}(G).
inline bool is_fractal(const FiniteTreeGroup &G) {
  if (G.depth() < 2) throw RangeError("fractality test needs depth >= 2");
  if (!is_level_transitive(G)) return false;
  const int m = G.depth() - 1;
  const auto target = G.truncated(m);
  for (int j = 0; j < G.degree(); ++j) {
    const Vertex v({static_cast<std::uint8_t>(j)});
    std::unordered_set<std::string> got;
    for (const auto &g : G.elements()) {
      if (apply_vertex(g, v) != v) continue;
      auto s = section(g, v, m);
      if (!target.contains(s)) return false;
      got.insert(canonical_key(s));
    }
    if (got.size() != target.size()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Cosets

/// True iff every conjugate s^-1 h s (s in G's generating set, h in H's) lies in H.
inline bool is_normal_in(const FiniteTreeGroup &G, const FiniteTreeGroup &H) {
  for (const auto &s : G.generating_set()) {
    const Portrait s_inv = invert(s);
    for (const auto &h : H.generating_set())
      if (!H.contains(compose(compose(s_inv, h), s))) return false;
  }
  return true;
}

/// Right cosets Hg of H in G.
class CosetDecomposition {
 public:
  CosetDecomposition(BigInt subgroup_order, BigInt index, std::vector<Portrait> transversal,
                     std::unordered_map<std::string, std::uint32_t> coset_of, bool is_normal)
      : subgroup_order_(std::move(subgroup_order)),
        index_(std::move(index)),
        transversal_(std::move(transversal)),
        coset_of_(std::move(coset_of)),
        is_normal_(is_normal) {}

  const BigInt &subgroup_order() const { return subgroup_order_; }
  const BigInt &index() const { return index_; }
  const std::vector<Portrait> &transversal() const { return transversal_; }
  bool is_normal() const { return is_normal_; }

  std::size_t coset_index(const Portrait &g) const {
    auto it = coset_of_.find(canonical_key(g));
    if (it == coset_of_.end()) throw ContainmentError("element is not in the ambient group");
    return it->second;
  }

 private:
  BigInt subgroup_order_;
  BigInt index_;
  std::vector<Portrait> transversal_;
  std::unordered_map<std::string, std::uint32_t> coset_of_;
  bool is_normal_;
};

inline CosetDecomposition coset_decomposition(const FiniteTreeGroup &G, const FiniteTreeGroup &H) {
  if (G.degree() != H.degree() || G.depth() != H.depth()) throw ShapeError("groups differ in shape");
  for (const auto &h : H.elements())
    if (!G.contains(h)) throw ContainmentError("subgroup element outside ambient group");
  std::unordered_map<std::string, std::uint32_t> coset_of;
  coset_of.reserve(G.size());
  std::vector<Portrait> transversal;
  for (const auto &g : G.elements()) {
    if (coset_of.count(canonical_key(g))) continue;
    const auto idx = static_cast<std::uint32_t>(transversal.size());
    transversal.push_back(g);
    for (const auto &h : H.elements()) coset_of.emplace(canonical_key(compose(h, g)), idx);
  }
  if (coset_of.size() != G.size()) throw WitnessViolation("cosets do not partition the group");
  BigInt index = transversal.size();
  const bool normal = is_normal_in(G, H);
  return CosetDecomposition(H.order(), std::move(index), std::move(transversal), std::move(coset_of), normal);
}

}  // namespace treegroups

#endif  // TREEGROUPS_GROUP_HPP
