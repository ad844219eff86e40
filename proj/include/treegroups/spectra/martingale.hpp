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

#ifndef TREEGROUPS_SPECTRA_MARTINGALE_HPP
#define TREEGROUPS_SPECTRA_MARTINGALE_HPP

#include <map>
#include <vector>

#include "treegroups/group.hpp"

namespace treegroups {

/// E[X_{k+1} | X_k = t] over the uniform measure, for one attained t.
struct ConditionalRow {
  int k;
  std::size_t t;
  std::size_t count;
  ExactFraction conditional_mean;
  bool holds;  // conditional_mean == t
};

struct MartingaleVerdict {
  /// subtree_transitive[k]: St_G(k) is transitive on every subtree rooted at
  /// level k, down to the available depth.
  std::vector<bool> subtree_transitive;
  bool identity_checked = false;
  /// E[X_{k+1} | X_k = t] = t for every attained t.
  bool identity_holds = true;
  /// E[X_{k+1} | X_1, ..., X_k] = X_k for every attained history.
  bool history_identity_holds = true;
  std::vector<ConditionalRow> rows;

  bool transitive() const {
    for (bool b : subtree_transitive)
      if (!b) return false;
    return true;
  }
  bool holds() const { return transitive() && (!identity_checked || (identity_holds && history_identity_holds)); }
};

inline MartingaleVerdict martingale_criterion(const FiniteTreeGroup &G, bool check_identity = true) {
  const int n = G.depth();
  const int d = G.degree();
  MartingaleVerdict v;
  for (int k = 0; k < n; ++k) {
    const auto K = level_stabilizer(G, k);
    bool ok = true;
    // K fixes level k, so its orbits on level j refine the d^k subtrees
    for (int j = k + 1; j <= n && ok; ++j) ok = K.orbits(j).size() == level_size(d, k);
    v.subtree_transitive.push_back(ok);
  }
  if (!v.transitive() || !check_identity) return v;
  v.identity_checked = true;
  // (k, t) -> (count, sum of X_{k+1}); history -> same
  std::map<std::pair<int, std::size_t>, std::pair<std::size_t, std::size_t>> marginal;
  std::map<std::vector<std::size_t>, std::pair<std::size_t, std::size_t>> history;
  for (const auto &g : G.elements()) {
    const auto x = fixed_counts(g);
    for (int k = 0; k < n; ++k) {
      auto &m = marginal[{k, x[k]}];
      ++m.first;
      m.second += x[k + 1];
      auto &h = history[std::vector<std::size_t>(x.begin(), x.begin() + k + 1)];
      ++h.first;
      h.second += x[k + 1];
    }
  }
  for (const auto &[key, cs] : marginal) {
    const ExactFraction mean = make_fraction(cs.second, cs.first);
    const bool holds = mean == ExactFraction(key.second);
    v.rows.push_back({key.first, key.second, cs.first, mean, holds});
    if (!holds) v.identity_holds = false;
  }
  for (const auto &[hist, cs] : history)
    if (cs.second != hist.back() * cs.first) v.history_identity_holds = false;
  return v;
}

}  // namespace treegroups

#endif  // TREEGROUPS_SPECTRA_MARTINGALE_HPP
