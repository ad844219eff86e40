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

#ifndef TREEGROUPS_PORTRAIT_HPP
#define TREEGROUPS_PORTRAIT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "treegroups/errors.hpp"
#include "treegroups/perm.hpp"

namespace treegroups {

/// Number of vertices of the d-adic tree at levels 0..n-1, i.e. (d^n - 1)/(d - 1).
inline std::size_t internal_vertex_count(int d, int n) {
  std::size_t total = 0, level = 1;
  for (int k = 0; k < n; ++k) {
    total += level;
    level *= static_cast<std::size_t>(d);
  }
  return total;
}

inline std::size_t level_size(int d, int k) {
  std::size_t s = 1;
  for (int i = 0; i < k; ++i) s *= static_cast<std::size_t>(d);
  return s;
}

/// A vertex of the d-adic tree, as a word over {0, ..., d-1}. The root is the empty word.
class Vertex {
 public:
  Vertex() = default;
  explicit Vertex(std::vector<std::uint8_t> letters) : letters_(std::move(letters)) {}

  static Vertex root() { return Vertex(); }

  /// Digit string ("01") for d <= 10, or comma separated letters ("11,3").
  static Vertex parse(const std::string &text) {
    std::vector<std::uint8_t> letters;
    if (text.find(',') != std::string::npos) {
      std::size_t start = 0;
      while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        letters.push_back(static_cast<std::uint8_t>(std::stoi(text.substr(start, end - start))));
        start = end + 1;
      }
    } else {
      for (char c : text) {
        if (c < '0' || c > '9') throw ParseError("bad vertex letter", letters.size());
        letters.push_back(static_cast<std::uint8_t>(c - '0'));
      }
    }
    return Vertex(std::move(letters));
  }

  /// Vertex at level k with the given rank in big-endian base-d order.
  static Vertex from_rank(int d, int k, std::size_t rank) {
    std::vector<std::uint8_t> letters(k);
    for (int i = k - 1; i >= 0; --i) {
      letters[i] = static_cast<std::uint8_t>(rank % d);
      rank /= d;
    }
    return Vertex(std::move(letters));
  }

  int level() const noexcept { return static_cast<int>(letters_.size()); }
  std::span<const std::uint8_t> letters() const noexcept { return letters_; }
  int letter(int i) const { return letters_.at(i); }

  Vertex child(int j) const {
    auto l = letters_;
    l.push_back(static_cast<std::uint8_t>(j));
    return Vertex(std::move(l));
  }

  /// Position within its level, big-endian base d.
  std::size_t rank(int d) const {
    std::size_t r = 0;
    for (auto x : letters_) r = r * d + x;
    return r;
  }

  void check_letters(int d) const {
    for (auto x : letters_)
      if (x >= d) throw RangeError("vertex letter " + std::to_string(x) + " >= degree");
  }

  std::string to_string() const {
    std::string out;
    bool wide = false;
    for (auto x : letters_) wide |= x >= 10;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (wide) {
        if (i) out += ',';
        out += std::to_string(letters_[i]);
      } else {
        out += static_cast<char>('0' + letters_[i]);
      }
    }
    return out;
  }

  friend bool operator==(const Vertex &, const Vertex &) = default;
  friend auto operator<=>(const Vertex &, const Vertex &) = default;

 private:
  std::vector<std::uint8_t> letters_;
};

class Portrait;

namespace detail {
inline Portrait make_trusted(int d, int depth, std::vector<std::uint8_t> labels);
}

/// A depth-n automorphism of the d-adic tree, stored as one label per
/// internal vertex (levels 0..n-1) in breadth-first order. Level k starts at
/// offset (d^k - 1)/(d - 1); within a level vertices are ordered by rank.
///
/// Depth 0 is the unique automorphism of a single point.
class Portrait {
 public:
  static Portrait identity(Degree d, int depth) {
    if (depth < 0) throw RangeError("negative depth");
    const std::size_t n = internal_vertex_count(d, depth);
    std::vector<std::uint8_t> labels(n * d);
    for (std::size_t v = 0; v < n; ++v)
      for (int j = 0; j < d; ++j) labels[v * d + j] = static_cast<std::uint8_t>(j);
    return Portrait(d, depth, std::move(labels));
  }

  /// Labels in breadth-first order; each block of d bytes must be a permutation.
  static Portrait from_flat(Degree d, int depth, std::vector<std::uint8_t> labels) {
    if (depth < 0) throw RangeError("negative depth");
    if (labels.size() != internal_vertex_count(d, depth) * d)
      throw ShapeError("label array has wrong size for degree and depth");
    for (std::size_t v = 0; v * d < labels.size(); ++v) {
      std::uint32_t seen = 0;
      for (int j = 0; j < d; ++j) {
        auto x = labels[v * d + j];
        if (x >= d || (seen >> x & 1u)) throw std::invalid_argument("label is not a permutation");
        seen |= 1u << x;
      }
    }
    return Portrait(d, depth, std::move(labels));
  }

  static Portrait from_labels(Degree d, int depth, const std::vector<Perm> &labels) {
    std::vector<std::uint8_t> flat;
    flat.reserve(labels.size() * d);
    for (const auto &p : labels) {
      if (p.size() != d) throw ShapeError("label degree mismatch");
      flat.insert(flat.end(), p.images().begin(), p.images().end());
    }
    return from_flat(d, depth, std::move(flat));
  }

  Degree degree() const noexcept { return Degree(d_); }
  int depth() const noexcept { return depth_; }
  std::size_t internal_count() const noexcept { return labels_.size() / d_; }
  std::span<const std::uint8_t> flat_labels() const noexcept { return labels_; }

  /// Label at the breadth-first index.
  std::span<const std::uint8_t> label_at(std::size_t index) const {
    return std::span<const std::uint8_t>(labels_).subspan(index * d_, d_);
  }

  std::size_t index_of(const Vertex &v) const {
    if (v.level() >= depth_) throw RangeError("vertex at level " + std::to_string(v.level()) +
                                              " has no label in a depth-" + std::to_string(depth_) +
                                              " portrait");
    v.check_letters(d_);
    return internal_vertex_count(d_, v.level()) + v.rank(d_);
  }

  Perm label(const Vertex &v) const { return Perm::from_span(label_at(index_of(v))); }

  bool is_identity() const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] != i % d_) return false;
    return true;
  }

  /// Copy with the label at v replaced.
  Portrait with_label(const Vertex &v, const Perm &p) const {
    if (p.size() != d_) throw ShapeError("label degree mismatch");
    auto labels = labels_;
    const std::size_t at = index_of(v) * d_;
    std::copy(p.images().begin(), p.images().end(), labels.begin() + static_cast<std::ptrdiff_t>(at));
    return Portrait(d_, depth_, std::move(labels));
  }

  friend bool operator==(const Portrait &, const Portrait &) = default;

 private:
  friend Portrait detail::make_trusted(int d, int depth, std::vector<std::uint8_t> labels);

  Portrait(int d, int depth, std::vector<std::uint8_t> labels)
      : d_(d), depth_(depth), labels_(std::move(labels)) {}

  int d_;
  int depth_;
  std::vector<std::uint8_t> labels_;
};

namespace detail {

inline Portrait make_trusted(int d, int depth, std::vector<std::uint8_t> labels) {
  return Portrait(d, depth, std::move(labels));
}

inline void require_same_shape(const Portrait &g, const Portrait &h) {
  if (g.degree() != h.degree() || g.depth() != h.depth())
    throw ShapeError("portrait shape mismatch: (d=" + std::to_string(g.degree().value()) +
                     ", depth=" + std::to_string(g.depth()) + ") vs (d=" +
                     std::to_string(h.degree().value()) + ", depth=" + std::to_string(h.depth()) + ")");
}

}  // namespace detail

/// Product g·h under right actions: v^(gh) = (v^g)^h. Labels satisfy
/// (gh)|_v = g|_v · h|_{v^g}.
inline Portrait compose(const Portrait &g, const Portrait &h) {
  detail::require_same_shape(g, h);
  const int d = g.degree();
  const std::size_t n = g.internal_count();
  auto gl = g.flat_labels();
  auto hl = h.flat_labels();
  std::vector<std::uint8_t> out(n * d);
  // image of each internal vertex under g, computed level by level
  std::vector<std::uint32_t> image(n);
  if (n) image[0] = 0;
  std::size_t level_start = 0, size = 1;
  for (int k = 0; k < g.depth(); ++k) {
    const std::size_t next_start = level_start + size;
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t v = level_start + i;
      const std::size_t w = image[v];
      for (int j = 0; j < d; ++j) {
        const auto gj = gl[v * d + j];
        out[v * d + j] = hl[w * d + gj];
        if (k + 1 < g.depth()) {
          image[next_start + i * d + j] =
              static_cast<std::uint32_t>(next_start + (w - level_start) * d + gj);
        }
      }
    }
    level_start = next_start;
    size *= d;
  }
  return detail::make_trusted(d, g.depth(), std::move(out));
}

/// Inverse: the label of g^-1 at v^g is the inverse of the label of g at v.
inline Portrait invert(const Portrait &g) {
  const int d = g.degree();
  const std::size_t n = g.internal_count();
  auto gl = g.flat_labels();
  std::vector<std::uint8_t> out(n * d);
  std::vector<std::uint32_t> image(n);
  if (n) image[0] = 0;
  std::size_t level_start = 0, size = 1;
  for (int k = 0; k < g.depth(); ++k) {
    const std::size_t next_start = level_start + size;
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t v = level_start + i;
      const std::size_t w = image[v];
      for (int j = 0; j < d; ++j) {
        const auto gj = gl[v * d + j];
        out[w * d + gj] = static_cast<std::uint8_t>(j);
        if (k + 1 < g.depth()) {
          image[next_start + i * d + j] =
              static_cast<std::uint32_t>(next_start + (w - level_start) * d + gj);
        }
      }
    }
    level_start = next_start;
    size *= d;
  }
  return detail::make_trusted(d, g.depth(), std::move(out));
}

/// The section g|_v truncated to depth m.
inline Portrait section(const Portrait &g, const Vertex &v, int m) {
  const int d = g.degree();
  if (v.level() > g.depth()) throw RangeError("section vertex deeper than portrait");
  if (m < 0 || m > g.depth() - v.level()) throw RangeError("section depth out of range");
  v.check_letters(d);
  auto gl = g.flat_labels();
  std::vector<std::uint8_t> out;
  out.reserve(internal_vertex_count(d, m) * d);
  std::size_t rank = v.rank(d), width = 1;
  for (int k = 0; k < m; ++k) {
    const std::size_t start = internal_vertex_count(d, v.level() + k) + rank;
    out.insert(out.end(), gl.begin() + static_cast<std::ptrdiff_t>(start * d),
               gl.begin() + static_cast<std::ptrdiff_t>((start + width) * d));
    rank *= d;
    width *= d;
  }
  return detail::make_trusted(d, m, std::move(out));
}

/// Truncation pi_m(g) = g|_root^m.
inline Portrait truncate(const Portrait &g, int m) { return section(g, Vertex::root(), m); }

/// Image v^g, letter by letter along the path.
inline Vertex apply_vertex(const Portrait &g, const Vertex &v) {
  const int d = g.degree();
  if (v.level() > g.depth()) throw RangeError("vertex deeper than portrait");
  v.check_letters(d);
  auto gl = g.flat_labels();
  std::vector<std::uint8_t> out(v.level());
  std::size_t prefix_rank = 0;
  for (int k = 0; k < v.level(); ++k) {
    const std::size_t idx = internal_vertex_count(d, k) + prefix_rank;
    out[k] = gl[idx * d + v.letter(k)];
    prefix_rank = prefix_rank * d + v.letter(k);
  }
  return Vertex(std::move(out));
}

/// Ranks of the images of all level-k vertices: result[r] = rank of (vertex r)^g.
inline std::vector<std::uint32_t> level_action(const Portrait &g, int k) {
  if (k < 0 || k > g.depth()) throw RangeError("level out of range");
  const int d = g.degree();
  auto gl = g.flat_labels();
  std::vector<std::uint32_t> cur{0}, next;
  for (int lvl = 0; lvl < k; ++lvl) {
    const std::size_t start = internal_vertex_count(d, lvl);
    next.assign(cur.size() * d, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const std::size_t w = cur[i];
      for (int j = 0; j < d; ++j) next[i * d + j] = static_cast<std::uint32_t>(w * d + gl[(start + i) * d + j]);
    }
    cur.swap(next);
  }
  return cur;
}

/// X_k(g): number of level-k vertices fixed by g.
inline std::size_t fixed_count(const Portrait &g, int k) {
  if (k < 0 || k > g.depth()) throw RangeError("level out of range");
  const int d = g.degree();
  auto gl = g.flat_labels();
  // a vertex is fixed iff its parent is fixed and the parent's label fixes the letter
  std::vector<std::uint32_t> fixed{0}, next;
  for (int lvl = 0; lvl < k; ++lvl) {
    const std::size_t start = internal_vertex_count(d, lvl);
    next.clear();
    for (auto r : fixed) {
      for (int j = 0; j < d; ++j)
        if (gl[(start + r) * d + j] == j) next.push_back(static_cast<std::uint32_t>(r * d + j));
    }
    fixed.swap(next);
    if (fixed.empty()) break;
  }
  return fixed.size();
}

/// Fixed-point counts X_0..X_depth in one pass.
inline std::vector<std::size_t> fixed_counts(const Portrait &g) {
  const int d = g.degree();
  auto gl = g.flat_labels();
  std::vector<std::size_t> out{1};
  std::vector<std::uint32_t> fixed{0}, next;
  for (int lvl = 0; lvl < g.depth(); ++lvl) {
    const std::size_t start = internal_vertex_count(d, lvl);
    next.clear();
    for (auto r : fixed)
      for (int j = 0; j < d; ++j)
        if (gl[(start + r) * d + j] == j) next.push_back(static_cast<std::uint32_t>(r * d + j));
    fixed.swap(next);
    out.push_back(fixed.size());
  }
  return out;
}

/// Injective byte encoding for portraits of a fixed (d, depth): the Lehmer
/// ranks of the labels in breadth-first order, packed base d! into 64-bit
/// limbs (as many digits per limb as fit), each limb little-endian.
inline std::string canonical_key(const Portrait &g) {
  const int d = g.degree();
  std::uint64_t radix = 1;
  for (int i = 2; i <= d; ++i) radix *= static_cast<std::uint64_t>(i);
  int per_limb = 0;
  {
    unsigned __int128 cap = 1;
    const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 64;
    while (cap * radix <= limit) {
      cap *= radix;
      ++per_limb;
    }
  }
  const std::size_t n = g.internal_count();
  std::string key;
  key.reserve(((n + per_limb - 1) / per_limb) * 8);
  auto gl = g.flat_labels();
  for (std::size_t base = 0; base < n; base += per_limb) {
    std::uint64_t limb = 0;
    const std::size_t end = std::min(n, base + per_limb);
    for (std::size_t v = end; v-- > base;)
      limb = limb * radix + Perm::lehmer_rank(gl.subspan(v * d, d));
    for (int b = 0; b < 8; ++b) key.push_back(static_cast<char>((limb >> (8 * b)) & 0xff));
  }
  return key;
}

}  // namespace treegroups

#endif  // TREEGROUPS_PORTRAIT_HPP
