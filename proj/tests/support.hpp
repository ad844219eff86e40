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
#ifndef TREEGROUPS_TESTS_SUPPORT_HPP
#define TREEGROUPS_TESTS_SUPPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "treegroups/group.hpp"
#include "treegroups/portrait.hpp"
#include "treegroups/sampling.hpp"

namespace treegroups::testing {

/// Uniform element of Aut T^n: every label drawn independently.
inline Portrait random_portrait(Degree d, int depth, Rng &rng) {
  std::vector<Perm> labels;
  std::uint64_t fact = 1;
  for (int i = 2; i <= d; ++i) fact *= static_cast<std::uint64_t>(i);
  for (std::size_t i = 0; i < internal_vertex_count(d, depth); ++i)
    labels.push_back(Perm::from_rank(d, uniform_below(rng, fact)));
  return Portrait::from_labels(d, depth, labels);
}

/// Image of a vertex computed letter by letter from the labels.
inline std::vector<int> walk(const Portrait &g, const std::vector<int> &letters) {
  std::vector<int> prefix, image;
  for (int x : letters) {
    Vertex v = Vertex::root();
    for (int y : prefix) v = v.child(y);
    image.push_back(g.label(v)(x));
    prefix.push_back(x);
  }
  return image;
}

inline std::vector<int> letters_of(const Vertex &v) { return {v.letters().begin(), v.letters().end()}; }

/// Every element of Aut T^n, by direct product enumeration of label choices.
inline std::vector<Portrait> all_portraits(Degree d, int depth) {
  const std::size_t n = internal_vertex_count(d, depth);
  std::uint64_t fact = 1;
  for (int i = 2; i <= d; ++i) fact *= static_cast<std::uint64_t>(i);
  std::vector<std::uint64_t> digits(n, 0);
  std::vector<Portrait> out;
  while (true) {
    std::vector<Perm> labels;
    for (auto r : digits) labels.push_back(Perm::from_rank(d, r));
    out.push_back(Portrait::from_labels(d, depth, labels));
    std::size_t i = 0;
    while (i < n && ++digits[i] == fact) digits[i++] = 0;
    if (i == n) break;
  }
  return out;
}

inline FiniteTreeGroup aut_group(Degree d, int depth) {
  return FiniteTreeGroup(d, depth, {}, all_portraits(d, depth));
}

}  // namespace treegroups::testing

#endif  // TREEGROUPS_TESTS_SUPPORT_HPP
