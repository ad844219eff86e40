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

#ifndef TREEGROUPS_SPECTRA_HDIM_HPP
#define TREEGROUPS_SPECTRA_HDIM_HPP

#include <optional>
#include <string>
#include <vector>

#include "treegroups/spec.hpp"
#include "treegroups/spectra/log_order.hpp"

namespace treegroups {

struct HdimLevel {
  int n;
  LogOrder log_order;      // log|pi_n(G)|
  LogOrder log_aut_order;  // log|pi_n(Aut T)|
  double log_order_value;
  double log_aut_value;
  double ratio;
  std::optional<ExactFraction> exact_ratio;
  std::string source;  // "closed-form" or "enumeration"
};

struct HdimReport {
  std::string spec_id;
  int d;
  std::vector<HdimLevel> levels;
};

inline HdimLevel hdim_level(int d, int n, LogOrder order, std::string source) {
  LogOrder aut = aut_log_order(d, n);
  const auto a = order.value();
  const auto b = aut.value();
  auto exact = exact_ratio(order, aut);
  return {n, std::move(order), aut, a.convert_to<double>(), b.convert_to<double>(),
          static_cast<double>((a / b).convert_to<double>()), std::move(exact), std::move(source)};
}

/// log|pi_n(G)| / log|pi_n(Aut T)| for n = max(1, min_depth)..n_max. Closed forms are used
/// where the family has one; other families are enumerated under `cap`.
inline HdimReport hdim_sequence(const GroupSpec &spec, int n_max, std::size_t cap = FiniteTreeGroup::kDefaultCap) {
  if (n_max < 1) throw RangeError("n_max must be >= 1");
  HdimReport r{spec.family_name(), spec.degree(), {}};
  for (int n = std::max(1, min_depth(spec)); n <= n_max; ++n) {
    if (auto c = closed_form_log_order(spec, n)) {
      r.levels.push_back(hdim_level(r.d, n, std::move(*c), "closed-form"));
    } else {
      r.levels.push_back(hdim_level(r.d, n, LogOrder::of(materialize(spec, n, cap).size()), "enumeration"));
    }
  }
  return r;
}

}  // namespace treegroups

#endif  // TREEGROUPS_SPECTRA_HDIM_HPP
