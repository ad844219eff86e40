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
#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "support.hpp"
#include "treegroups/codec.hpp"
#include "treegroups/constructions/affine.hpp"
#include "treegroups/constructions/gh.hpp"
#include "treegroups/spec.hpp"
#include "treegroups/spectra/bad_cosets.hpp"
#include "treegroups/spectra/fpp.hpp"
#include "treegroups/spectra/hdim.hpp"
#include "treegroups/spectra/martingale.hpp"
#include "treegroups/spectra/process.hpp"

using namespace treegroups;
using treegroups::testing::aut_group;

namespace {

ExactFraction brute_fpp(const FiniteTreeGroup &G, int k) {
  std::size_t fixing = 0;
  const int d = G.degree();
  for (const auto &g : G.elements()) {
    bool any = false;
    for (std::size_t r = 0; r < level_size(d, k) && !any; ++r) {
      auto v = treegroups::testing::letters_of(Vertex::from_rank(d, k, r));
      any = treegroups::testing::walk(g, v) == v;
    }
    fixing += any;
  }
  return make_fraction(fixing, G.size());
}

GroupSpec gs_spec(int d) { return {GSFamily{GSSpec(Degree(d))}}; }

}  // namespace

TEST(fpp, small_exact_values) {
  EXPECT_EQ(fpp_at_level(aut_group(Degree(2), 1), 1), make_fraction(1, 2));
  EXPECT_EQ(fpp_at_level(aut_group(Degree(2), 2), 2), make_fraction(3, 8));
  EXPECT_EQ(fpp_at_level(aut_group(Degree(2), 2), 0), 1);
  EXPECT_THROW(fpp_at_level(aut_group(Degree(2), 2), 3), RangeError);
}

TEST(fpp, matches_brute_force_count) {
  std::vector<FiniteTreeGroup> groups{aut_group(Degree(2), 3), aut_group(Degree(3), 2), lemma_group(Degree(2), 3).G,
                                      lemma_group(Degree(3), 2).G, affine_model(Degree(3), 2, AffinePart::H)};
  for (const auto &G : groups)
    for (int k = 0; k <= G.depth(); ++k) EXPECT_EQ(fpp_at_level(G, k), brute_fpp(G, k));
}

TEST(fpp, lemma_d2_bound_and_monotone) {
  auto L = lemma_group(Degree(2), 4);
  auto r = fpp_report(L.G, "lemma", theorem_bound(2), "theorem");
  EXPECT_TRUE(r.exact());
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(r.pass());
  for (const auto &lvl : r.levels) EXPECT_GE(lvl.p, make_fraction(1, 4));
}

TEST(fpp, monotone_on_many_groups) {
  std::vector<FiniteTreeGroup> groups{aut_group(Degree(2), 3), GSGroup(GSSpec(Degree(3)), 3).materialize(),
                                      affine_model(Degree(5), 2, AffinePart::H)};
  for (const auto &G : groups) {
    auto r = fpp_report(G, "g");
    EXPECT_TRUE(r.monotone);
    for (std::size_t k = 1; k < r.levels.size(); ++k) EXPECT_LE(r.levels[k].p, r.levels[k - 1].p);
  }
}

TEST(fpp, sampled_level_brackets_exact_value) {
  const auto spec = gs_spec(2);
  const auto exact = fpp_at_level(materialize(spec, 4), 4);
  auto r = fpp_report(spec, 4, 100, 100000, kDefaultSeed);
  EXPECT_FALSE(r.exact());
  ASSERT_EQ(r.levels.size(), 4u);
  EXPECT_EQ(r.levels[3].level, 4);
  ASSERT_TRUE(r.levels[3].sampled.has_value());
  EXPECT_TRUE(contains(*r.levels[3].sampled, exact));
  EXPECT_FALSE(r.levels[2].sampled.has_value());
}

TEST(fpp, wilson_interval) {
  auto s = sampled_proportion(50, 100);
  EXPECT_DOUBLE_EQ(s.estimate, 0.5);
  EXPECT_LT(s.low, 0.5);
  EXPECT_GT(s.high, 0.5);
  auto zero = sampled_proportion(0, 100);
  EXPECT_EQ(zero.low, 0.0);
  EXPECT_GT(zero.high, 0.0);
}

TEST(bad_cosets, affine_d3) {
  auto G = affine_model(Degree(3), 2, AffinePart::G);
  auto H = affine_model(Degree(3), 2, AffinePart::H);
  auto GH = gh_group(G, H);
  auto r = bad_cosets(G, H, &GH);
  EXPECT_EQ(r.q_size, 2);
  ASSERT_EQ(r.M.size(), 1u);
  EXPECT_EQ(r.ratio, make_fraction(1, 2));
  EXPECT_FALSE(r.representatives[r.M[0]].label(Vertex::root()).is_full_cycle());
  EXPECT_EQ(r.complete_monodromy, std::optional<bool>(true));
  auto b = monodromy_bound(GH, H, r);
  EXPECT_EQ(b.bound, make_fraction(1, 2));
  EXPECT_EQ(b.checked, 81u);
  EXPECT_EQ(b.witnesses.size(), 81u);
  for (const auto &w : b.witnesses) EXPECT_EQ(apply_vertex(GH.element(w.element), w.fixed_leaf), w.fixed_leaf);
  EXPECT_GE(fpp_at_level(GH, 2), make_fraction(1, 2));
}

TEST(bad_cosets, empty_and_full) {
  auto L = lemma_group(Degree(2), 3);
  auto r = bad_cosets(L.G, L.H);
  EXPECT_EQ(r.q_size, 1);
  EXPECT_TRUE(r.M.empty());
  EXPECT_EQ(r.ratio, 0);
  EXPECT_FALSE(r.complete_monodromy.has_value());
  EXPECT_TRUE(monodromy_bound(L.G, L.H, r).witnesses.empty());

  auto T = enumerate_closure(Degree(3), 1, {});
  auto t = bad_cosets(T, T);
  EXPECT_EQ(t.M, std::vector<std::size_t>{0});
  EXPECT_EQ(t.ratio, 1);

  auto S3 = aut_group(Degree(3), 1);
  auto U = enumerate_closure(Degree(3), 1, {parse_portrait("102", Degree(3))});
  EXPECT_THROW(bad_cosets(S3, U), PreconditionError);
}

TEST(euler, known_values) {
  EXPECT_EQ(euler_formulas(3).bad_count, 1);
  EXPECT_EQ(euler_formulas(3).fpp_bound, make_fraction(1, 2));
  EXPECT_EQ(euler_formulas(15).bad_count, 3);
  EXPECT_EQ(euler_formulas(15).fpp_bound, make_fraction(3, 8));
  for (int d : {2, 4, 6, 12, 100}) {
    EXPECT_EQ(euler_formulas(d).bad_count, 0);
    EXPECT_EQ(euler_formulas(d).fpp_bound, 0);
  }
  EXPECT_EQ(prime_divisors(360), (std::vector<int>{2, 3, 5}));
}

TEST(euler, brute_force_sweep) {
  for (int d = 2; d <= 200; ++d) {
    // a is bad when every z -> a z + b has a fixed point.
    int bad = 0, units = 0;
    for (int a = 1; a < d; ++a) {
      if (std::gcd(a, d) != 1) continue;
      ++units;
      bool all = true;
      for (int b = 0; b < d && all; ++b) {
        bool fixed = false;
        for (int z = 0; z < d && !fixed; ++z) fixed = (a * z + b) % d == z;
        all = fixed;
      }
      bad += all;
    }
    auto count = affine_bad_cosets(d);
    auto closed = euler_formulas(d);
    EXPECT_EQ(count.bad_count, bad) << d;
    EXPECT_EQ(count.q_size, units) << d;
    EXPECT_EQ(BigInt(bad), closed.bad_count) << d;
    EXPECT_EQ(make_fraction(bad, units), closed.fpp_bound) << d;
  }
}

TEST(log_order, arithmetic) {
  auto a = LogOrder::of(12);
  EXPECT_EQ(a.exponents().at(2), 2);
  EXPECT_EQ(a.exponents().at(3), 1);
  EXPECT_EQ(*a.expand(), 12);
  EXPECT_TRUE(LogOrder::of(1).is_zero());
  EXPECT_EQ(exact_ratio(LogOrder::of(8), LogOrder::of(4)), std::optional<ExactFraction>(make_fraction(3, 2)));
  EXPECT_FALSE(exact_ratio(LogOrder::of(6), LogOrder::of(4)).has_value());
  EXPECT_NEAR(LogOrder::of(1000).value().convert_to<double>(), std::log(1000.0), 1e-12);
  EXPECT_EQ(aut_log_order(2, 3), LogOrder::of(128));
}

TEST(hdim, gs_d2_closed_form_sequence) {
  auto r = hdim_sequence(gs_spec(2), 20);
  ASSERT_EQ(r.levels.size(), 20u);
  for (const auto &l : r.levels) {
    const BigInt num = ipow(BigInt(2), l.n - 1), den = ipow(BigInt(2), l.n) - 1;
    EXPECT_EQ(l.exact_ratio, std::optional<ExactFraction>(make_fraction(num, den)));
    EXPECT_EQ(l.source, "closed-form");
  }
  EXPECT_LT(std::abs(r.levels.back().ratio - 0.5), 1e-5);
}

TEST(hdim, closed_form_matches_enumeration) {
  for (int d : {2, 3}) {
    for (int n = 1; n <= (d == 2 ? 4 : 3); ++n) {
      auto closed = closed_form_log_order(gs_spec(d), n);
      ASSERT_TRUE(closed.has_value());
      EXPECT_EQ(*closed, LogOrder::of(GSGroup(GSSpec(Degree(d)), n).materialize().size()));
      EXPECT_EQ(*closed, LogOrder::of(enumerate_closure(Degree(d), n, GSGroup(GSSpec(Degree(d)), n).generators()).size()));
    }
  }
}

TEST(hdim, reference_groups) {
  for (const auto &l : hdim_sequence({AutFamily{Degree(3)}}, 4).levels) {
    EXPECT_EQ(l.exact_ratio, std::optional<ExactFraction>(1));
    EXPECT_DOUBLE_EQ(l.ratio, 1.0);
  }
  for (const auto &l : hdim_sequence({GeneratorsFamily{Degree(2), {}}}, 3).levels) EXPECT_EQ(l.ratio, 0.0);
  for (const auto &l : hdim_sequence(gs_spec(3), 6).levels) {
    EXPECT_GE(l.ratio, 0.0);
    EXPECT_LE(l.ratio, 1.0);
  }
}

TEST(process, burnside_mean_one_on_transitive_groups) {
  auto L = lemma_group(Degree(2), 4);
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(burnside_mean(L.G, k), 1);
  auto ex = process_exact(L.G);
  for (const auto &m : ex.mean) EXPECT_EQ(m, 1);
  auto S = enumerate_closure(Degree(2), 2, {parse_portrait("10", Degree(2), 2)});
  EXPECT_EQ(burnside_mean(S, 2), 2);
}

TEST(process, exact_event_dominates_theorem_bound) {
  auto L = lemma_group(Degree(2), 4);
  EXPECT_GE(process_exact(L.G.truncated(3)).event, theorem_bound(2));
}

TEST(process, theorem_family) {
  EXPECT_EQ(theorem_bound(2), make_fraction(1, 4));
  EXPECT_EQ(theorem_bound(3), make_fraction(2, 27));
  auto f = theorem_family(lemma_group(Degree(2), 4));
  EXPECT_EQ(f.measure, make_fraction(1, 4));
  EXPECT_EQ(f.measure, f.expected);
  EXPECT_TRUE(f.inside_group);
  EXPECT_TRUE(f.all_fixed_d);
  EXPECT_FALSE(f.violation.has_value());
}

TEST(process, trivial_group_fixes_everything) {
  auto r = process_sample({GeneratorsFamily{Degree(3), {}}}, 2, 50, kDefaultSeed);
  for (const auto &t : r.trajectories) EXPECT_EQ(t, (std::vector<std::uint32_t>{3, 9}));
}

TEST(process, sampled_agrees_with_exact) {
  auto r = process_sample(gs_spec(2), 4, 100000, kDefaultSeed);
  EXPECT_EQ(r.sampler, "product");
  ASSERT_TRUE(r.exact.has_value());
  EXPECT_TRUE(contains(r.event, r.exact->event));
  for (int k = 1; k <= 4; ++k) {
    const double exact = to_double(r.exact->mean[k]);
    EXPECT_LE(r.mean[k - 1].low, exact);
    EXPECT_GE(r.mean[k - 1].high, exact);
  }
}

TEST(process, deterministic_and_refuses_without_sampler) {
  auto a = process_sample(gs_spec(3), 3, 200, 42);
  auto b = process_sample(gs_spec(3), 3, 200, 42);
  auto c = process_sample(gs_spec(3), 3, 200, 43);
  EXPECT_EQ(a.trajectories, b.trajectories);
  EXPECT_NE(a.trajectories, c.trajectories);
  EXPECT_THROW(process_sample({AffineFamily{Degree(3), AffinePart::G}}, 3, 10, 1, 1000), CapacityError);
}

TEST(martingale, verdicts) {
  EXPECT_TRUE(martingale_criterion(aut_group(Degree(2), 3)).holds());
  EXPECT_TRUE(martingale_criterion(lemma_group(Degree(2), 3).G).holds());
  EXPECT_TRUE(martingale_criterion(lemma_group(Degree(3), 3).G).holds());
  auto S = enumerate_closure(Degree(2), 3, {parse_portrait("10", Degree(2), 3)});
  EXPECT_FALSE(martingale_criterion(S).holds());
}

TEST(martingale, conditional_identity_matches_direct_count) {
  auto G = lemma_group(Degree(2), 3).G;
  auto v = martingale_criterion(G);
  ASSERT_TRUE(v.identity_checked);
  std::map<std::pair<int, std::size_t>, std::pair<std::size_t, std::size_t>> tally;  // (k, t) -> (count, sum X_{k+1})
  for (const auto &g : G.elements()) {
    auto x = fixed_counts(g);
    for (int k = 0; k < 3; ++k) {
      auto &cell = tally[{k, x[k]}];
      ++cell.first;
      cell.second += x[k + 1];
    }
  }
  for (const auto &row : v.rows) {
    const auto &cell = tally.at({row.k, row.t});
    EXPECT_EQ(row.count, cell.first);
    EXPECT_EQ(row.conditional_mean, make_fraction(cell.second, cell.first));
    EXPECT_EQ(row.holds, row.conditional_mean == static_cast<long>(row.t));
    EXPECT_TRUE(row.holds);
  }
}
