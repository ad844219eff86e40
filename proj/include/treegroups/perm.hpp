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

#ifndef TREEGROUPS_PERM_HPP
#define TREEGROUPS_PERM_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "treegroups/errors.hpp"

namespace treegroups {

/// Valency of the rooted tree. Portraits support 2 <= d <= kMaxDegree so
/// that a Lehmer rank fits in one 64-bit limb.
class Degree {
 public:
  static constexpr int kMaxDegree = 20;

  explicit Degree(int d) : d_(d) {
    if (d < 2 || d > kMaxDegree) {
      throw std::invalid_argument("degree must lie in [2, " + std::to_string(kMaxDegree) +
                                  "], got " + std::to_string(d));
    }
  }

  int value() const noexcept { return d_; }
  operator int() const noexcept { return d_; }

  friend bool operator==(Degree a, Degree b) noexcept { return a.d_ == b.d_; }

 private:
  int d_;
};

/// Permutation of {0, ..., d-1} in one-line notation.
///
/// Products follow the right-action convention: p * q applies p first and
/// then q, so (p * q)(x) == q(p(x)).
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::vector<std::uint8_t> images) : images_(std::move(images)) { validate(); }

  static Perm from_ints(const std::vector<int> &images) {
    std::vector<std::uint8_t> v;
    v.reserve(images.size());
    for (int x : images) {
      if (x < 0 || x > 255) throw std::invalid_argument("perm image out of range");
      v.push_back(static_cast<std::uint8_t>(x));
    }
    return Perm(std::move(v));
  }

  static Perm identity(int d) {
    std::vector<std::uint8_t> v(d);
    std::iota(v.begin(), v.end(), std::uint8_t{0});
    return Perm(std::move(v), Unchecked{});
  }

  /// The standard d-cycle i -> i+1 mod d.
  static Perm standard_cycle(int d) {
    std::vector<std::uint8_t> v(d);
    for (int i = 0; i < d; ++i) v[i] = static_cast<std::uint8_t>((i + 1) % d);
    return Perm(std::move(v), Unchecked{});
  }

  static Perm from_span(std::span<const std::uint8_t> images) {
    return Perm(std::vector<std::uint8_t>(images.begin(), images.end()), Unchecked{});
  }

  /// Inverse of lehmer_rank.
  static Perm from_rank(int d, std::uint64_t rank) {
    std::vector<std::uint8_t> pool(d);
    std::iota(pool.begin(), pool.end(), std::uint8_t{0});
    std::vector<std::uint64_t> fact(d, 1);
    for (int i = 1; i < d; ++i) fact[i] = fact[i - 1] * static_cast<std::uint64_t>(i);
    std::vector<std::uint8_t> out;
    out.reserve(d);
    for (int i = d - 1; i >= 0; --i) {
      std::uint64_t digit = rank / fact[i];
      rank %= fact[i];
      if (digit >= pool.size()) throw std::invalid_argument("rank out of range");
      out.push_back(pool[digit]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
    }
    return Perm(std::move(out), Unchecked{});
  }

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_.at(x); }
  std::span<const std::uint8_t> images() const noexcept { return images_; }

  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Perm inverse() const {
    std::vector<std::uint8_t> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<std::uint8_t>(i);
    return Perm(std::move(inv), Unchecked{});
  }

  /// k-fold product; negative k uses the inverse.
  Perm power(long long k) const {
    Perm base = k < 0 ? inverse() : *this;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    Perm result = identity(size());
    while (e) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  int order() const {
    Perm p = *this;
    int n = 1;
    while (!p.is_identity()) {
      p = p * *this;
      ++n;
    }
    return n;
  }

  std::vector<int> fixed_points() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (images_[i] == i) out.push_back(i);
    return out;
  }

  bool has_fixed_point() const {
    for (int i = 0; i < size(); ++i)
      if (images_[i] == i) return true;
    return false;
  }

  /// True iff the permutation is a single cycle through all d points.
  bool is_full_cycle() const {
    int x = 0, steps = 0;
    do {
      x = images_[x];
      ++steps;
    } while (x != 0 && steps <= size());
    return steps == size();
  }

  std::uint64_t lehmer_rank() const { return lehmer_rank(images_); }

  static std::uint64_t lehmer_rank(std::span<const std::uint8_t> images) {
    const int d = static_cast<int>(images.size());
    std::uint64_t rank = 0;
    for (int i = 0; i < d; ++i) {
      std::uint64_t smaller = 0;
      for (int j = i + 1; j < d; ++j)
        if (images[j] < images[i]) ++smaller;
      rank = rank * static_cast<std::uint64_t>(d - i) + smaller;
    }
    return rank;
  }

  friend Perm operator*(const Perm &p, const Perm &q) {
    if (p.size() != q.size()) throw ShapeError("perm degree mismatch");
    std::vector<std::uint8_t> out(p.images_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = q.images_[p.images_[i]];
    return Perm(std::move(out), Unchecked{});
  }

  friend bool operator==(const Perm &, const Perm &) = default;
  friend auto operator<=>(const Perm &, const Perm &) = default;

 private:
  struct Unchecked {};
  Perm(std::vector<std::uint8_t> images, Unchecked) : images_(std::move(images)) {}

  void validate() const {
    std::vector<bool> seen(images_.size(), false);
    for (auto x : images_) {
      if (x >= images_.size() || seen[x]) throw std::invalid_argument("not a permutation");
      seen[x] = true;
    }
  }

  std::vector<std::uint8_t> images_;
};

}  // namespace treegroups

#endif  // TREEGROUPS_PERM_HPP
