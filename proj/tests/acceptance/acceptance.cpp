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
// Acceptance checks 1-11. Prints one [PASS]/[FAIL] line per check and exits
// nonzero when any check fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "../support.hpp"
#include "treegroups/codec.hpp"
#include "treegroups/constructions/affine.hpp"
#include "treegroups/constructions/gh.hpp"
#include "treegroups/constructions/gs.hpp"
#include "treegroups/report.hpp"
#include "treegroups/spec.hpp"
#include "treegroups/spectra/bad_cosets.hpp"
#include "treegroups/spectra/fpp.hpp"
#include "treegroups/spectra/hdim.hpp"
#include "treegroups/spectra/martingale.hpp"
#include "treegroups/spectra/process.hpp"

using namespace treegroups;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      detail << " FAILED: " << what << ";";
    }
  }
  void note(const std::string &what) { detail << " " << what << ";"; }
};

struct Case {
  int d;
  int depth;
};

const std::vector<Case> kLemmaCases{{2, 4}, {3, 3}};

std::string str(const ExactFraction &q) { return to_string(q); }

Outcome lemma_identity() {
  Outcome o;
  for (auto [d, n] : kLemmaCases) {
    const auto L = lemma_group(Degree(d), n);
    const std::string tag = "d=" + std::to_string(d) + " n=" + std::to_string(n);
    try {
      const auto GH = gh_group(L.G, L.H);
      o.check(GH.same_elements(L.G), tag + " |G_H|=" + std::to_string(GH.size()) + " != |G|=" + std::to_string(L.G.size()));
      if (GH.same_elements(L.G)) o.note(tag + " G = G_H (" + std::to_string(GH.size()) + ")");
    } catch (const PreconditionError &e) {
      const auto filter = gh_filter(L.G, L.H);
      o.check(false, tag + " gh_group: " + std::string(e.what()) + " (filter " + std::to_string(filter.size()) +
                         " of |G|=" + std::to_string(L.G.size()) + ")");
    }
  }
  return o;
}

Outcome stabilizer_containment() {
  Outcome o;
  for (auto [d, n] : kLemmaCases) {
    const auto L = lemma_group(Degree(d), n);
    const auto St = level_stabilizer(L.G, 2);
    std::size_t outside = 0;
    for (const auto &g : St.elements()) outside += !L.H.contains(g);
    const std::string tag = "d=" + std::to_string(d) + " n=" + std::to_string(n);
    o.check(outside == 0, tag + " " + std::to_string(outside) + " of " + std::to_string(St.size()) +
                              " elements of St_G(2) lie outside H");
    if (outside == 0) o.note(tag + " St_G(2) (" + std::to_string(St.size()) + ") in H");
  }
  return o;
}

Outcome fpp_bound() {
  Outcome o;
  for (auto [d, n] : std::vector<Case>{{2, 5}, {3, 3}}) {
    const auto L = lemma_group(Degree(d), n);
    const auto bound = theorem_bound(d);
    const auto r = fpp_report(L.G, "lemma", bound, "theorem");
    ExactFraction lowest = 1;
    for (const auto &l : r.levels) {
      o.check(l.p >= bound, "d=" + std::to_string(d) + " p_" + std::to_string(l.level) + "=" + str(l.p) + " < " + str(bound));
      lowest = l.p;
    }
    o.check(r.monotone, "d=" + std::to_string(d) + " p_k not monotone");
    o.note("d=" + std::to_string(d) + " p_" + std::to_string(n) + "=" + str(lowest) + " >= " + str(bound));
  }
  return o;
}

Outcome theorem_shadow() {
  Outcome o;
  for (auto [d, n] : kLemmaCases) {
    const auto f = theorem_family(lemma_group(Degree(d), n));
    const ExactFraction expected = make_fraction(factorial(d), BigInt(d) * ipow(BigInt(d), d));
    const std::string tag = "d=" + std::to_string(d);
    o.check(f.inside_group, tag + " family member outside G");
    o.check(f.all_fixed_d, tag + " family member with X_k != d");
    o.check(f.measure == expected && expected == theorem_bound(d), tag + " measure " + str(f.measure) + " != " + str(expected));
    o.note(tag + " " + std::to_string(f.size) + " members, measure " + str(f.measure));
  }
  return o;
}

Outcome pi2_order() {
  Outcome o;
  for (int d = 2; d <= 4; ++d) {
    const auto L = lemma_group(Degree(d), 2);
    const BigInt expected = BigInt(d) * ipow(BigInt(d), d);
    o.check(L.G.order() == expected, "d=" + std::to_string(d) + " |pi_2(G)|=" + to_string(L.G.order()));
    o.note("d=" + std::to_string(d) + " " + to_string(L.G.order()));
  }
  return o;
}

Outcome index_formula() {
  Outcome o;
  std::optional<ExactFraction> base;
  for (int n = 2; n <= 4; ++n) {
    const auto L = lemma_group(Degree(2), n);
    const auto idx = make_fraction(L.G.order(), L.H.order());
    if (!base) base = idx;
    o.check(idx == *base, "n=" + std::to_string(n) + " index " + str(idx) + " != " + str(*base));
  }
  o.note("index " + str(*base) + " for n=2..4");
  return o;
}

Outcome hausdorff() {
  Outcome o;
  const GroupSpec gs{GSFamily{GSSpec(Degree(2))}};
  for (int n = 1; n <= 4; ++n) {
    const auto closed = closed_form_log_order(gs, n);
    const auto enumerated = LogOrder::of(materialize(gs, n).size());
    o.check(closed && *closed == enumerated, "n=" + std::to_string(n) + " closed form differs from enumeration");
    const auto ratio = exact_ratio(enumerated, aut_log_order(2, n));
    const auto expected = make_fraction(ipow(BigInt(2), n - 1), ipow(BigInt(2), n) - 1);
    o.check(ratio && *ratio == expected, "n=" + std::to_string(n) + " ratio differs from 2^(n-1)/(2^n-1)");
  }
  const auto r20 = hdim_sequence(gs, 20).levels.back();
  o.check(std::abs(r20.ratio - 0.5) < 1e-5, "ratio(20)=" + format_double(r20.ratio));
  o.note("ratio(20)=" + format_double(r20.ratio));
  const auto r3 = hdim_sequence(GroupSpec{GSFamily{GSSpec(Degree(3))}}, 20).levels.back();
  o.note("d=3 ratio(20)=" + format_double(r3.ratio) + " (reported)");
  return o;
}

Outcome affine_bounds() {
  Outcome o;
  for (int d = 2; d <= 200; ++d) {
    const auto brute = affine_bad_cosets(d);
    const auto closed = euler_formulas(d);
    o.check(BigInt(brute.bad_count) == closed.bad_count, "d=" + std::to_string(d) + " bad count");
    o.check(brute.ratio == closed.fpp_bound, "d=" + std::to_string(d) + " fpp bound");
  }
  const auto G = affine_model(Degree(3), 2, AffinePart::G);
  const auto H = affine_model(Degree(3), 2, AffinePart::H);
  const auto GH = gh_group(G, H);
  const auto bad = bad_cosets(G, H, &GH);
  const auto p2 = fpp_at_level(GH, 2);
  o.check(p2 >= make_fraction(1, 2), "p_2=" + str(p2));
  try {
    const auto mb = monodromy_bound(GH, H, bad);
    std::size_t fixing = 0;
    for (const auto &w : mb.witnesses)
      fixing += w.fixed_leaf.level() == 2 && apply_vertex(GH.element(w.element), w.fixed_leaf) == w.fixed_leaf;
    o.check(mb.checked == 81 && fixing == 81, std::to_string(fixing) + " of " + std::to_string(mb.checked) + " fix a leaf");
    o.note("|G_H|=" + std::to_string(GH.size()) + " p_2=" + str(p2) + " witnesses " + std::to_string(fixing));
  } catch (const WitnessViolation &e) {
    o.check(false, e.what());
  }
  return o;
}

Outcome burnside_martingale() {
  Outcome o;
  const auto L2 = lemma_group(Degree(2), 3);
  const auto L3 = lemma_group(Degree(3), 3);
  const auto AG = affine_model(Degree(3), 2, AffinePart::G);
  const auto AH = affine_model(Degree(3), 2, AffinePart::H);
  const auto AGH = gh_group(AG, AH);
  const std::vector<std::pair<std::string, FiniteTreeGroup>> groups{
      {"lemma G d=2", L2.G}, {"lemma H d=2", L2.H}, {"lemma G d=3", L3.G}, {"lemma H d=3", L3.H},
      {"affine G", AG},      {"affine H", AH},      {"affine G_H", AGH}};
  std::size_t transitive = 0;
  for (const auto &[name, G] : groups) {
    if (is_level_transitive(G)) {
      ++transitive;
      for (int k = 0; k <= G.depth(); ++k)
        o.check(burnside_mean(G, k) == 1, name + " E[X_" + std::to_string(k) + "] != 1");
    }
    const auto v = martingale_criterion(G);
    o.check(v.holds() && v.identity_checked, name + " martingale criterion");
  }
  o.note(std::to_string(transitive) + " transitive groups, " + std::to_string(groups.size()) + " martingale checks");
  return o;
}

Outcome samplers() {
  Outcome o;
  std::uint64_t stream = 100;
  std::size_t tested = 0;
  for (int d = 2; d <= 4; ++d)
    for (int n = 1;; ++n) {
      const GSGroup H(GSSpec(Degree(d)), n);
      if (H.order() > 10000) break;
      const auto all = H.materialize();
      Rng rng = substream(kDefaultSeed, stream++);
      const auto fit = uniformity_test(all, 100000, [&] { return H.sample(rng); });
      o.check(fit.p_value >= 1e-3, "product d=" + std::to_string(d) + " n=" + std::to_string(n) + " p=" + format_double(fit.p_value));
      ++tested;
    }
  for (int n = 2;; ++n) {
    const LemmaSampler S(GSSpec(Degree(2)), n);
    if (S.order() > 10000) break;
    const auto G = lemma_group(Degree(2), n).G;
    Rng rng = substream(kDefaultSeed, stream++);
    const auto fit = uniformity_test(G, 100000, [&] { return S.sample(rng); });
    o.check(fit.p_value >= 1e-3, "coset n=" + std::to_string(n) + " p=" + format_double(fit.p_value));
    ++tested;
  }
  o.note(std::to_string(tested) + " sampler/group pairs");
  return o;
}

Outcome core_properties() {
  Outcome o;
  for (int d = 2; d <= 4; ++d) {
    Rng rng = substream(kDefaultSeed, 200 + d);
    const Degree deg(d);
    const int n = 3;
    std::unordered_set<std::string> keys;
    std::set<std::vector<std::uint8_t>> labels;
    std::size_t cocycle = 0, inverse = 0, codec = 0;
    for (int i = 0; i < 10000; ++i) {
      const auto g = treegroups::testing::random_portrait(deg, n, rng);
      const auto h = treegroups::testing::random_portrait(deg, n, rng);
      const auto gh = compose(g, h);
      const auto v = Vertex::from_rank(d, 1, uniform_below(rng, static_cast<std::uint64_t>(d)));
      cocycle += section(gh, v, n - 1) != compose(section(g, v, n - 1), section(h, apply_vertex(g, v), n - 1));
      inverse += !compose(g, invert(g)).is_identity() || invert(gh) != compose(invert(h), invert(g));
      codec += parse_portrait(format_portrait(g), deg, n) != g;
      keys.insert(canonical_key(g));
      labels.emplace(g.flat_labels().begin(), g.flat_labels().end());
    }
    const std::string tag = "d=" + std::to_string(d);
    o.check(cocycle == 0, tag + " cocycle failures " + std::to_string(cocycle));
    o.check(inverse == 0, tag + " inverse failures " + std::to_string(inverse));
    o.check(codec == 0, tag + " codec failures " + std::to_string(codec));
    o.check(keys.size() == labels.size(), tag + " key collisions");
  }
  o.note("10^4 portraits per degree 2..4");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
      {"1 lemma identity G = G_H", lemma_identity},
      {"2 stabilizer containment St_G(2) <= H", stabilizer_containment},
      {"3 fpp lower bound (d-1)!/d^d", fpp_bound},
      {"4 X_k = d family and its measure", theorem_shadow},
      {"5 |pi_2(G)| = d d^d", pi2_order},
      {"6 index formula", index_formula},
      {"7 Hausdorff ratios", hausdorff},
      {"8 affine bad cosets and fpp bound", affine_bounds},
      {"9 Burnside mean and martingale", burnside_martingale},
      {"10 sampler goodness of fit", samplers},
      {"11 core algebra properties", core_properties},
  };
  int failed = 0;
  for (const auto &[name, run] : checks) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception &e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " (" << timing << ")" << o.detail.str() << std::endl;
  }
  std::cout << (checks.size() - failed) << "/" << checks.size() << " acceptance checks passed" << std::endl;
  return failed ? 1 : 0;
}
