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

#ifndef TREEGROUPS_SUITE_HPP
#define TREEGROUPS_SUITE_HPP

#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "treegroups/report.hpp"
#include "treegroups/spec.hpp"
#include "treegroups/spectra/bad_cosets.hpp"
#include "treegroups/spectra/fpp.hpp"
#include "treegroups/spectra/hdim.hpp"
#include "treegroups/spectra/martingale.hpp"
#include "treegroups/spectra/process.hpp"

namespace treegroups::suite {

using Value = std::variant<bool, BigInt, ExactFraction, double>;

inline std::string to_string(const Value &v) {
  return std::visit(detail::overloaded{
                        [](bool b) { return std::string(b ? "true" : "false"); },
                        [](const BigInt &n) { return treegroups::to_string(n); },
                        [](const ExactFraction &q) { return treegroups::to_string(q); },
                        [](double x) { return format_double(x); },
                    },
                    v);
}

/// One checkable statement: operation `relation` expected. `expected` is a
/// literal (true, false, integer, a/b, decimal) or "=name" for the value of
/// another operation. `when` restricts the claim to configurations, e.g.
/// "d==2 && depth>=4 || d==3".
struct Claim {
  std::string id;
  std::string operation;
  std::string relation;  // ==  !=  >=  <=  >  <  report
  std::string expected;
  double tolerance = 0;  // absolute, used when either side is a double
  std::string when;
};

struct SuiteConfig {
  std::string suite;
  int degree = 2;
  int depth = 2;
  std::uint64_t trials = 100000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t cap = FiniteTreeGroup::kDefaultCap;
  std::optional<GroupSpec> spec;
};

/// A value built on first use. A failed build is remembered and rethrown.
template <class T>
class Lazy {
 public:
  template <class F>
  const T &get(F &&build) {
    if (error_) std::rethrow_exception(error_);
    if (!value_) {
      try {
        value_.emplace(build());
      } catch (...) {
        error_ = std::current_exception();
        throw;
      }
    }
    return *value_;
  }

 private:
  std::optional<T> value_;
  std::exception_ptr error_;
};

/// Lazily built groups shared by the operations of one run.
class Context {
 public:
  explicit Context(SuiteConfig config) : config_(std::move(config)), gs_(Degree(config_.degree)) {}

  const SuiteConfig &config() const { return config_; }
  int d() const { return config_.degree; }
  int depth() const { return config_.depth; }
  std::size_t cap() const { return config_.cap; }
  const GSSpec &gs() const { return gs_; }

  const LemmaGroups &lemma() { return lemma_at(depth()); }

  const LemmaGroups &lemma_at(int n) {
    return lemma_[n].get([&] { return lemma_group(gs_, n, cap()); });
  }

  const FiniteTreeGroup &lemma_gh() {
    return lemma_gh_.get([&] { return gh_group(lemma().G, lemma().H); });
  }

  const FiniteTreeGroup &affine(AffinePart part) {
    auto &slot = part == AffinePart::G ? affine_g_ : affine_h_;
    return slot.get([&] { return affine_model(Degree(d()), depth(), part, cap()); });
  }

  const FiniteTreeGroup &affine_gh() {
    return affine_gh_.get([&] { return gh_group(affine(AffinePart::G), affine(AffinePart::H)); });
  }

  const BadCosetReport &affine_bad() {
    return affine_bad_.get([&] { return bad_cosets(affine(AffinePart::G), affine(AffinePart::H), &affine_gh()); });
  }

  GroupSpec lemma_spec() const { return {LemmaFamily{gs_}}; }
  GroupSpec gs_spec() const { return {GSFamily{gs_}}; }

  std::map<std::string, Value> values;

 private:
  SuiteConfig config_;
  GSSpec gs_;
  std::map<int, Lazy<LemmaGroups>> lemma_;
  Lazy<FiniteTreeGroup> lemma_gh_, affine_g_, affine_h_, affine_gh_;
  Lazy<BadCosetReport> affine_bad_;
};

using Operation = std::function<Value(Context &)>;

namespace ops {

inline ExactFraction fpp_min(const FiniteTreeGroup &G) {
  ExactFraction m = 1;
  for (int k = 1; k <= G.depth(); ++k) m = std::min(m, fpp_at_level(G, k));
  return m;
}

inline bool fpp_monotone(const FiniteTreeGroup &G) { return fpp_report(G, "").monotone; }

inline bool burnside(const FiniteTreeGroup &G) {
  for (int k = 0; k <= G.depth(); ++k)
    if (burnside_mean(G, k) != ExactFraction(G.orbits(k).size())) return false;
  return true;
}

inline bool burnside_one(const FiniteTreeGroup &G) {
  for (int k = 0; k <= G.depth(); ++k)
    if (burnside_mean(G, k) != 1) return false;
  return true;
}

/// p-value of a chi-square test of `sampler` against the uniform law on G.
inline double gof(const FiniteTreeGroup &G, const Sampler &sampler, std::uint64_t draws, Rng rng) {
  return uniformity_test(G, draws, [&] { return sampler.draw(rng); }).p_value;
}

inline bool affine_sweep(int max_d) {
  for (int d = 2; d <= max_d; ++d) {
    const auto brute = affine_bad_cosets(d);
    const auto closed = euler_formulas(d);
    if (closed.bad_count != brute.bad_count || closed.fpp_bound != brute.ratio) return false;
  }
  return true;
}

/// A coset a + translations consists of maps with fixed points iff a - 1 is a unit.
inline bool affine_unit_criterion(int max_d) {
  for (int d = 2; d <= max_d; ++d) {
    const auto aff = affine_group(d);
    for (int a : aff.units()) {
      bool all_fix = true;
      for (const auto &e : aff.elements)
        if (e.map.a == a && e.fixed_points.empty()) all_fix = false;
      if (all_fix != (std::gcd(a - 1, d) == 1)) return false;
    }
  }
  return true;
}

inline HdimLevel gs_hdim(const Context &ctx, int n) {
  return hdim_level(ctx.d(), n, *closed_form_log_order(ctx.gs_spec(), n), "closed-form");
}

}  // namespace ops

inline const std::map<std::string, Operation> &operations() {
  static const std::map<std::string, Operation> table = [] {
    std::map<std::string, Operation> t;
    auto B = [](std::size_t n) { return Value(BigInt(n)); };
    // lemma family
    t["lemma.order_G"] = [B](Context &c) { return B(c.lemma().G.size()); };
    t["lemma.order_H"] = [B](Context &c) { return B(c.lemma().H.size()); };
    t["lemma.pi2_order"] = [B](Context &c) { return B(c.lemma().G.truncated(2).size()); };
    t["lemma.pi2_expected"] = [](Context &c) {
      return Value(BigInt(c.d()) * ipow(BigInt(c.d()), static_cast<unsigned long long>(c.d())));
    };
    t["lemma.h_normal"] = [](Context &c) { return Value(c.lemma().checks.h_normal_in_g); };
    t["lemma.complete_monodromy"] = [](Context &c) { return Value(c.lemma().checks.complete_monodromy); };
    t["lemma.gh_filter_order"] = [B](Context &c) { return B(gh_filter(c.lemma().G, c.lemma().H).size()); };
    t["lemma.gh_equals_g"] = [](Context &c) { return Value(c.lemma_gh().same_elements(c.lemma().G)); };
    t["lemma.gh_identity"] = [](Context &c) { return Value(gh_group(c.lemma().G, c.lemma().G).same_elements(c.lemma().G)); };
    t["lemma.h_normal_in_gh"] = [](Context &c) { return Value(is_normal_in(c.lemma_gh(), c.lemma().H)); };
    t["lemma.gh_normal_in_g"] = [](Context &c) { return Value(is_normal_in(c.lemma().G, c.lemma_gh())); };
    t["lemma.fractal_GH"] = [](Context &c) { return Value(is_fractal(c.lemma_gh())); };
    t["lemma.st2_subset_h"] = [](Context &c) { return Value(level_stabilizer(c.lemma().G, 2).is_subset_of(c.lemma().H)); };
    t["lemma.index"] = [](Context &c) { return Value(coset_decomposition(c.lemma().G, c.lemma().H).index()); };
    t["lemma.index_expected"] = [](Context &c) { return Value(lemma_index(c.d())); };
    t["lemma.index_constant"] = [](Context &c) {
      const auto &L = c.lemma();
      auto index_at = [&](int n) { return make_fraction(L.G.truncated(n).size(), L.H.truncated(n).size()); };
      const auto base = index_at(2);
      if (denominator_of(base) != 1) return Value(false);
      for (int n = 3; n <= c.depth(); ++n)
        if (index_at(n) != base) return Value(false);
      return Value(true);
    };
    // H has pattern depth 2; both the pi_D and pi_{D+1} indices are reported
    t["lemma.gh_index_pi_D"] = [](Context &c) {
      return Value(make_fraction(c.lemma_gh().truncated(2).size(), c.lemma().H.truncated(2).size()));
    };
    t["lemma.gh_index_pi_D1"] = [](Context &c) {
      return Value(make_fraction(c.lemma_gh().truncated(3).size(), c.lemma().H.truncated(3).size()));
    };
    t["lemma.level_transitive_G"] = [](Context &c) { return Value(is_level_transitive(c.lemma().G)); };
    t["lemma.level_transitive_H"] = [](Context &c) { return Value(is_level_transitive(c.lemma().H)); };
    t["lemma.fractal_G"] = [](Context &c) { return Value(is_fractal(c.lemma().G)); };
    t["lemma.fractal_H"] = [](Context &c) { return Value(is_fractal(c.lemma().H)); };
    t["lemma.finite_type_H_D2"] = [](Context &c) { return Value(finite_type_check(c.lemma().H, 2, c.cap()).finite_type()); };
    t["lemma.finite_type_G_D3"] = [](Context &c) { return Value(finite_type_check(c.lemma().G, 3, c.cap()).finite_type()); };
    t["lemma.martingale_G"] = [](Context &c) { return Value(martingale_criterion(c.lemma().G).holds()); };
    t["lemma.martingale_H"] = [](Context &c) { return Value(martingale_criterion(c.lemma().H).holds()); };
    t["lemma.burnside_G"] = [](Context &c) { return Value(ops::burnside(c.lemma().G)); };
    t["lemma.burnside_H"] = [](Context &c) { return Value(ops::burnside(c.lemma().H)); };
    t["lemma.burnside_one_G"] = [](Context &c) { return Value(ops::burnside_one(c.lemma().G)); };
    t["lemma.burnside_one_H"] = [](Context &c) { return Value(ops::burnside_one(c.lemma().H)); };
    t["lemma.fpp_min"] = [](Context &c) { return Value(ops::fpp_min(c.lemma().G)); };
    t["lemma.fpp_monotone"] = [](Context &c) { return Value(ops::fpp_monotone(c.lemma().G)); };
    t["lemma.bad_ratio"] = [](Context &c) { return Value(bad_cosets(c.lemma().G, c.lemma().H).ratio); };
    t["theorem.bound"] = [](Context &c) { return Value(theorem_bound(c.d())); };
    t["theorem.family_measure"] = [](Context &c) { return Value(theorem_family(c.lemma()).measure); };
    t["theorem.family_fixed_d"] = [](Context &c) { return Value(theorem_family(c.lemma()).all_fixed_d); };
    t["theorem.family_inside"] = [](Context &c) { return Value(theorem_family(c.lemma()).inside_group); };
    t["lemma.process_exact_event"] = [](Context &c) { return Value(process_exact(c.lemma().G).event); };
    t["lemma.process_sampled_agrees"] = [](Context &c) {
      const auto r = process_sample(c.lemma_spec(), c.depth(), c.config().trials, c.config().seed, c.cap());
      return Value(contains(r.event, process_exact(c.lemma().G).event));
    };
    t["lemma.sampler_gof"] = [](Context &c) {
      return Value(ops::gof(c.lemma().G, make_sampler(c.lemma_spec(), c.depth(), c.cap()), c.config().trials,
                            substream(c.config().seed, 2)));
    };
    t["gs.sampler_gof"] = [](Context &c) {
      return Value(ops::gof(c.lemma().H, make_sampler(c.gs_spec(), c.depth(), c.cap()), c.config().trials,
                            substream(c.config().seed, 3)));
    };
    // affine model
    t["euler.bad_count"] = [](Context &c) { return Value(euler_formulas(c.d()).bad_count); };
    t["euler.fpp_bound"] = [](Context &c) { return Value(euler_formulas(c.d()).fpp_bound); };
    t["euler.sweep_200"] = [](Context &) { return Value(ops::affine_sweep(200)); };
    t["affine.unit_criterion_200"] = [](Context &) { return Value(ops::affine_unit_criterion(200)); };
    t["affine.bad_count_bruteforce"] = [](Context &c) { return Value(BigInt(affine_bad_cosets(c.d()).bad_count)); };
    t["affine.ratio_bruteforce"] = [](Context &c) { return Value(affine_bad_cosets(c.d()).ratio); };
    t["affine.order_G"] = [B](Context &c) { return B(c.affine(AffinePart::G).size()); };
    t["affine.order_H"] = [B](Context &c) { return B(c.affine(AffinePart::H).size()); };
    t["affine.gh_order"] = [B](Context &c) { return B(c.affine_gh().size()); };
    t["affine.gh_order_formula"] = [](Context &c) {
      // one unit a for the whole portrait, an independent translation per internal vertex
      const auto phi = affine_group(c.d()).units().size();
      return Value(BigInt(phi) * ipow(BigInt(c.d()), internal_vertex_count(c.d(), c.depth())));
    };
    t["affine.bad_ratio"] = [](Context &c) { return Value(c.affine_bad().ratio); };
    t["affine.complete_monodromy"] = [](Context &c) { return Value(*c.affine_bad().complete_monodromy); };
    t["affine.gh_fpp_min"] = [](Context &c) { return Value(ops::fpp_min(c.affine_gh())); };
    t["affine.gh_fpp_monotone"] = [](Context &c) { return Value(ops::fpp_monotone(c.affine_gh())); };
    t["affine.witness_ok"] = [](Context &c) {
      monodromy_bound(c.affine_gh(), c.affine(AffinePart::H), c.affine_bad());
      return Value(true);
    };
    t["affine.witnesses_checked"] = [B](Context &c) {
      return B(monodromy_bound(c.affine_gh(), c.affine(AffinePart::H), c.affine_bad()).checked);
    };
    t["affine.witnesses_expected"] = [](Context &c) {
      return Value(numerator_of(c.affine_bad().ratio * BigInt(c.affine_gh().size())));
    };
    t["affine.gh_identity"] = [](Context &c) {
      const auto &G = c.affine(AffinePart::G);
      return Value(gh_group(G, G).same_elements(G));
    };
    t["affine.h_in_gh"] = [](Context &c) { return Value(c.affine(AffinePart::H).is_subset_of(c.affine_gh())); };
    t["affine.gh_in_g"] = [](Context &c) { return Value(c.affine_gh().is_subset_of(c.affine(AffinePart::G))); };
    t["affine.h_normal_in_gh"] = [](Context &c) { return Value(is_normal_in(c.affine_gh(), c.affine(AffinePart::H))); };
    t["affine.gh_normal_in_g"] = [](Context &c) { return Value(is_normal_in(c.affine(AffinePart::G), c.affine_gh())); };
    t["affine.h_normal_in_g"] = [](Context &c) {
      return Value(is_normal_in(c.affine(AffinePart::G), c.affine(AffinePart::H)));
    };
    t["affine.h_normal_level1"] = [](Context &c) {
      return Value(is_normal_in(c.affine(AffinePart::G).truncated(1), c.affine(AffinePart::H).truncated(1)));
    };
    t["affine.martingale_G"] = [](Context &c) { return Value(martingale_criterion(c.affine(AffinePart::G)).holds()); };
    t["affine.martingale_H"] = [](Context &c) { return Value(martingale_criterion(c.affine(AffinePart::H)).holds()); };
    t["affine.martingale_GH"] = [](Context &c) { return Value(martingale_criterion(c.affine_gh()).holds()); };
    t["affine.burnside_G"] = [](Context &c) { return Value(ops::burnside(c.affine(AffinePart::G))); };
    t["affine.burnside_GH"] = [](Context &c) { return Value(ops::burnside(c.affine_gh())); };
    t["affine.burnside_one_GH"] = [](Context &c) { return Value(ops::burnside_one(c.affine_gh())); };
    // Hausdorff dimension; the G_S tower is the subgroup H of the lemma family
    t["hdim.ratio"] = [](Context &c) { return Value(ops::gs_hdim(c, c.depth()).ratio); };
    t["hdim.exact_ratio"] = [](Context &c) {
      auto r = ops::gs_hdim(c, c.depth()).exact_ratio;
      if (!r) throw PreconditionError("ratio is not rational");
      return Value(*r);
    };
    t["hdim.ratio_20"] = [](Context &c) { return Value(ops::gs_hdim(c, 20).ratio); };
    t["hdim.closed_form_d2"] = [](Context &c) {
      for (int n = 2; n <= c.depth(); ++n) {
        const auto r = ops::gs_hdim(c, n).exact_ratio;
        const BigInt p = ipow(BigInt(2), static_cast<unsigned long long>(n - 1));
        if (!r || *r != make_fraction(p, 2 * p - 1)) return Value(false);
      }
      return Value(true);
    };
    t["hdim.enumeration_matches"] = [](Context &c) {
      const int top = std::min(c.depth(), c.d() == 2 ? 4 : 3);
      for (int n = 1; n <= top; ++n) {
        if (*closed_form_log_order(c.gs_spec(), n) != LogOrder::of(gs_group(c.gs(), n).materialize(c.cap()).size()))
          return Value(false);
        if (auto g = closed_form_log_order(c.lemma_spec(), n)) {
          const auto &G = n >= 2 ? c.lemma_at(n).G : c.lemma_at(2).G;
          if (*g != LogOrder::of(n >= 2 ? G.size() : G.truncated(1).size())) return Value(false);
        }
      }
      return Value(true);
    };
    t["hdim.lemma_G_ratio"] = [](Context &c) {
      auto o = closed_form_log_order(c.lemma_spec(), c.depth());
      if (!o) throw PreconditionError("no closed form for the lemma group at this degree");
      return Value(hdim_level(c.d(), c.depth(), *o, "closed-form").ratio);
    };
    t["hdim.limit_constant"] = [](Context &c) {
      return Value(std::log(static_cast<double>(c.d())) / (c.d() * std::lgamma(c.d() + 1.0)));
    };
    t["hdim.aut_ratio"] = [](Context &c) {
      const GroupSpec aut{AutFamily{Degree(c.d())}};
      return Value(*hdim_level(c.d(), c.depth(), *closed_form_log_order(aut, c.depth()), "closed-form").exact_ratio);
    };
    t["hdim.spec_ratio"] = [](Context &c) {
      if (!c.config().spec) throw PreconditionError("no --spec given");
      return Value(hdim_sequence(*c.config().spec, c.depth(), c.cap()).levels.back().ratio);
    };
    return t;
  }();
  return table;
}

inline Value evaluate(Context &ctx, const std::string &name) {
  if (auto it = ctx.values.find(name); it != ctx.values.end()) return it->second;
  const auto &table = operations();
  auto op = table.find(name);
  if (op == table.end()) throw ParseError("unknown operation '" + name + "'", 0);
  Value v = op->second(ctx);
  ctx.values.emplace(name, v);
  return v;
}

// ---------------------------------------------------------------------------
// Claim evaluation

inline Value parse_literal(const std::string &text) {
  if (text == "true") return true;
  if (text == "false") return false;
  try {
    if (text.find('/') != std::string::npos) return parse_fraction(text);
    if (text.find_first_of(".eE") != std::string::npos) {
      std::size_t used = 0;
      const double x = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return x;
    }
    return BigInt(text);
  } catch (const std::exception &) {
    throw ParseError("bad expected literal '" + text + "'", 0);
  }
}

/// "d==2 && depth>=4 || d==3" over the variables d, depth and trials.
inline bool when_holds(const std::string &when, const SuiteConfig &c) {
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  auto split = [](const std::string &s, const std::string &sep) {
    std::vector<std::string> parts;
    std::size_t start = 0, pos;
    while ((pos = s.find(sep, start)) != std::string::npos) {
      parts.push_back(s.substr(start, pos - start));
      start = pos + sep.size();
    }
    parts.push_back(s.substr(start));
    return parts;
  };
  if (trim(when).empty()) return true;
  for (const auto &alt : split(when, "||")) {
    bool all = true;
    for (const auto &raw : split(alt, "&&")) {
      const auto atom = trim(raw);
      static const char *const rel[] = {"==", "!=", "<=", ">=", "<", ">"};
      std::size_t pos = std::string::npos;
      std::string op;
      for (const char *r : rel)
        if ((pos = atom.find(r)) != std::string::npos) {
          op = r;
          break;
        }
      if (op.empty()) throw ParseError("bad condition '" + atom + "'", 0);
      const auto var = trim(atom.substr(0, pos));
      long long rhs;
      try {
        rhs = std::stoll(trim(atom.substr(pos + op.size())));
      } catch (const std::exception &) {
        throw ParseError("bad condition '" + atom + "'", 0);
      }
      long long lhs;
      if (var == "d") lhs = c.degree;
      else if (var == "depth") lhs = c.depth;
      else if (var == "trials") lhs = static_cast<long long>(c.trials);
      else throw ParseError("unknown condition variable '" + var + "'", 0);
      const bool ok = op == "==" ? lhs == rhs : op == "!=" ? lhs != rhs : op == "<=" ? lhs <= rhs
                    : op == ">=" ? lhs >= rhs : op == "<"  ? lhs < rhs  : lhs > rhs;
      all = all && ok;
    }
    if (all) return true;
  }
  return false;
}

inline std::optional<ExactFraction> exact_of(const Value &v) {
  if (const auto *n = std::get_if<BigInt>(&v)) return ExactFraction(*n);
  if (const auto *q = std::get_if<ExactFraction>(&v)) return *q;
  return std::nullopt;
}

inline double double_of(const Value &v) {
  if (const auto *x = std::get_if<double>(&v)) return *x;
  if (const auto *b = std::get_if<bool>(&v)) return *b ? 1 : 0;
  return to_double(*exact_of(v));
}

/// Compares exactly when both sides are exact; with a double on either side
/// the comparison allows `tolerance` of slack.
inline bool compare(const std::string &relation, const Value &value, const Value &expected, double tolerance) {
  const bool value_bool = std::holds_alternative<bool>(value);
  if (value_bool || std::holds_alternative<bool>(expected)) {
    if (value_bool != std::holds_alternative<bool>(expected)) throw ParseError("cannot compare boolean with number", 0);
    if (relation == "==") return value == expected;
    if (relation == "!=") return value != expected;
    throw ParseError("relation '" + relation + "' needs numbers", 0);
  }
  const auto a = exact_of(value), b = exact_of(expected);
  if (a && b) {
    if (relation == "==") return *a == *b;
    if (relation == "!=") return *a != *b;
    if (relation == ">=") return *a >= *b;
    if (relation == "<=") return *a <= *b;
    if (relation == ">") return *a > *b;
    if (relation == "<") return *a < *b;
  } else {
    const double x = double_of(value), y = double_of(expected);
    if (relation == "==") return std::fabs(x - y) <= tolerance;
    if (relation == "!=") return std::fabs(x - y) > tolerance;
    if (relation == ">=") return x >= y - tolerance;
    if (relation == "<=") return x <= y + tolerance;
    if (relation == ">") return x > y - tolerance;
    if (relation == "<") return x < y + tolerance;
  }
  throw ParseError("unknown relation '" + relation + "'", 0);
}

enum class Status { Pass, Fail, Skipped, Reported, Capacity, Error };

inline const char *to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    case Status::Reported: return "report";
    case Status::Capacity: return "capacity";
    case Status::Error: return "error";
  }
  return "?";
}

struct ClaimResult {
  Claim claim;
  Status status;
  std::optional<Value> value;
  std::optional<Value> expected;
  std::string note;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<ClaimResult> results;

  std::size_t count(Status s) const {
    std::size_t n = 0;
    for (const auto &r : results) n += r.status == s;
    return n;
  }

  /// 0 all asserted claims pass; 3 some operation hit the enumeration cap;
  /// 1 otherwise (a failed assertion or an operation error).
  int exit_code() const {
    if (count(Status::Capacity)) return 3;
    if (count(Status::Fail) || count(Status::Error)) return 1;
    return 0;
  }
};

inline ClaimResult check_claim(Context &ctx, const Claim &claim) {
  ClaimResult r{claim, Status::Skipped, std::nullopt, std::nullopt, {}};
  if (!when_holds(claim.when, ctx.config())) return r;
  if (!operations().count(claim.operation)) throw ParseError("unknown operation '" + claim.operation + "'", 0);
  try {
    r.value = evaluate(ctx, claim.operation);
    if (claim.relation == "report") {
      r.status = Status::Reported;
      return r;
    }
    r.expected = claim.expected.starts_with("=") ? evaluate(ctx, claim.expected.substr(1)) : parse_literal(claim.expected);
    r.status = compare(claim.relation, *r.value, *r.expected, claim.tolerance) ? Status::Pass : Status::Fail;
  } catch (const CapacityError &e) {
    r.status = Status::Capacity;
    r.note = e.what();
  } catch (const ParseError &) {
    throw;
  } catch (const std::exception &e) {
    r.status = claim.relation == "report" ? Status::Reported : Status::Error;
    r.note = e.what();
  }
  return r;
}

inline SuiteReport run_suite(const SuiteConfig &config, const std::vector<Claim> &claims) {
  Context ctx(config);
  SuiteReport report{config, {}};
  for (const auto &c : claims) report.results.push_back(check_claim(ctx, c));
  return report;
}

// ---------------------------------------------------------------------------
// Claim tables

inline const std::vector<std::string> &suite_names() {
  static const std::vector<std::string> names{"lemma-theorem", "affine-unicritical", "gh-algebra", "martingale", "hdim"};
  return names;
}

inline const std::vector<Claim> &default_claims(const std::string &suite) {
  static const std::map<std::string, std::vector<Claim>> tables{
      {"lemma-theorem",
       {
           {"pi2-order", "lemma.pi2_order", "==", "=lemma.pi2_expected", 0, ""},
           {"complete-monodromy", "lemma.complete_monodromy", "==", "true", 0, ""},
           {"h-normal", "lemma.h_normal", "==", "true", 0, ""},
           {"g-equals-gh", "lemma.gh_equals_g", "==", "true", 0, ""},
           {"gh-filter-order", "lemma.gh_filter_order", "report", "", 0, ""},
           {"st2-in-h", "lemma.st2_subset_h", "==", "true", 0, ""},
           {"index", "lemma.index", "==", "=lemma.index_expected", 0, "d==2"},
           {"index-constant", "lemma.index_constant", "==", "true", 0, "d==2"},
           {"fpp-bound", "lemma.fpp_min", ">=", "=theorem.bound", 0, ""},
           {"fpp-monotone", "lemma.fpp_monotone", "==", "true", 0, ""},
           {"fpp-monodromy-bound", "lemma.fpp_min", ">=", "=lemma.bad_ratio", 0, ""},
           {"family-measure", "theorem.family_measure", "==", "=theorem.bound", 0, ""},
           {"family-fixed-d", "theorem.family_fixed_d", "==", "true", 0, ""},
           {"family-inside", "theorem.family_inside", "==", "true", 0, ""},
           {"event-exact", "lemma.process_exact_event", ">=", "=theorem.bound", 0, ""},
           {"event-sampled", "lemma.process_sampled_agrees", "==", "true", 0, ""},
           {"transitive-G", "lemma.level_transitive_G", "==", "true", 0, ""},
           {"transitive-H", "lemma.level_transitive_H", "==", "true", 0, ""},
           {"fractal-G", "lemma.fractal_G", "==", "true", 0, ""},
           {"fractal-H", "lemma.fractal_H", "==", "true", 0, ""},
           {"finite-type-H", "lemma.finite_type_H_D2", "==", "true", 0, "depth>=3"},
           {"finite-type-G", "lemma.finite_type_G_D3", "==", "true", 0, "d==2 && depth>=4"},
           {"coset-sampler", "lemma.sampler_gof", ">=", "0.001", 0, "d==2 && depth<=4"},
           {"product-sampler", "gs.sampler_gof", ">=", "0.001", 0, "d==2 && depth<=4 || d==3 && depth<=3"},
       }},
      {"affine-unicritical",
       {
           {"bad-count", "affine.bad_count_bruteforce", "==", "=euler.bad_count", 0, ""},
           {"bad-ratio-closed-form", "affine.ratio_bruteforce", "==", "=euler.fpp_bound", 0, ""},
           {"euler-sweep", "euler.sweep_200", "==", "true", 0, ""},
           {"unit-criterion", "affine.unit_criterion_200", "==", "true", 0, ""},
           {"model-bad-ratio", "affine.bad_ratio", "==", "=euler.fpp_bound", 0, ""},
           {"complete-monodromy", "affine.complete_monodromy", "==", "true", 0, ""},
           {"gh-order", "affine.gh_order", "==", "=affine.gh_order_formula", 0, ""},
           {"gh-order-162", "affine.gh_order", "==", "162", 0, "d==3 && depth==2"},
           {"bound-1/2", "euler.fpp_bound", "==", "1/2", 0, "d==3"},
           {"fpp-bound", "affine.gh_fpp_min", ">=", "=euler.fpp_bound", 0, ""},
           {"fpp-monotone", "affine.gh_fpp_monotone", "==", "true", 0, ""},
           {"witnesses", "affine.witness_ok", "==", "true", 0, ""},
           {"witness-count", "affine.witnesses_checked", "==", "=affine.witnesses_expected", 0, ""},
       }},
      {"gh-algebra",
       {
           {"lemma-gh-of-g", "lemma.gh_identity", "==", "true", 0, ""},
           {"affine-gh-of-g", "affine.gh_identity", "==", "true", 0, ""},
           {"lemma-g-equals-gh", "lemma.gh_equals_g", "==", "true", 0, ""},
           {"lemma-h-normal-gh", "lemma.h_normal_in_gh", "==", "true", 0, ""},
           {"lemma-gh-normal-g", "lemma.gh_normal_in_g", "==", "true", 0, ""},
           {"lemma-gh-fractal", "lemma.fractal_GH", "==", "true", 0, ""},
           {"affine-h-in-gh", "affine.h_in_gh", "==", "true", 0, ""},
           {"affine-gh-in-g", "affine.gh_in_g", "==", "true", 0, ""},
           {"affine-h-normal-gh", "affine.h_normal_in_gh", "==", "true", 0, ""},
           {"affine-h-normal-level-1", "affine.h_normal_level1", "==", "true", 0, ""},
           {"affine-h-normal-g", "affine.h_normal_in_g", "report", "", 0, ""},
           {"affine-gh-normal-g", "affine.gh_normal_in_g", "report", "", 0, ""},
           {"affine-gh-order", "affine.gh_order", "==", "=affine.gh_order_formula", 0, ""},
           {"lemma-gh-index-pi-D", "lemma.gh_index_pi_D", "report", "", 0, ""},
           {"lemma-gh-index-pi-D+1", "lemma.gh_index_pi_D1", "report", "", 0, "depth>=3"},
       }},
      {"martingale",
       {
           {"lemma-G", "lemma.martingale_G", "==", "true", 0, ""},
           {"lemma-H", "lemma.martingale_H", "==", "true", 0, ""},
           {"affine-G", "affine.martingale_G", "==", "true", 0, ""},
           {"affine-H", "affine.martingale_H", "==", "true", 0, ""},
           {"affine-GH", "affine.martingale_GH", "==", "true", 0, ""},
           {"burnside-lemma-G", "lemma.burnside_G", "==", "true", 0, ""},
           {"burnside-lemma-H", "lemma.burnside_H", "==", "true", 0, ""},
           {"burnside-affine-G", "affine.burnside_G", "==", "true", 0, ""},
           {"burnside-affine-GH", "affine.burnside_GH", "==", "true", 0, ""},
           {"mean-one-lemma-G", "lemma.burnside_one_G", "==", "true", 0, ""},
           {"mean-one-lemma-H", "lemma.burnside_one_H", "==", "true", 0, ""},
           {"mean-one-affine-GH", "affine.burnside_one_GH", "==", "true", 0, ""},
       }},
      {"hdim",
       {
           {"closed-form", "hdim.closed_form_d2", "==", "true", 0, "d==2"},
           {"enumeration", "hdim.enumeration_matches", "==", "true", 0, ""},
           {"limit", "hdim.ratio_20", "==", "1/2", 1e-5, "d==2"},
           {"ratio", "hdim.ratio", "report", "", 0, ""},
           {"exact-ratio", "hdim.exact_ratio", "report", "", 0, ""},
           {"limit-constant", "hdim.limit_constant", "report", "", 0, ""},
           {"lemma-G-ratio", "hdim.lemma_G_ratio", "report", "", 0, "d==2"},
           {"aut", "hdim.aut_ratio", "==", "1", 0, ""},
       }},
  };
  auto it = tables.find(suite);
  if (it == tables.end()) throw ParseError("unknown suite '" + suite + "'", 0);
  return it->second;
}

inline std::vector<Claim> parse_claims(const nlohmann::json &j) {
  if (!j.is_array()) throw ParseError("claims must be a JSON array", 0);
  std::vector<Claim> out;
  for (const auto &c : j) {
    if (!c.is_object()) throw ParseError("each claim must be an object", 0);
    Claim claim;
    try {
      claim.id = c.at("id").get<std::string>();
      claim.operation = c.at("operation").get<std::string>();
      claim.relation = c.at("relation").get<std::string>();
      claim.expected = c.value("expected", std::string());
      claim.tolerance = c.value("tolerance", 0.0);
      claim.when = c.value("when", std::string());
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(std::string("bad claim: ") + e.what(), 0);
    }
    if (!operations().count(claim.operation)) throw ParseError("unknown operation '" + claim.operation + "'", 0);
    out.push_back(std::move(claim));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Output

inline nlohmann::json to_json(const SuiteReport &r) {
  Provenance p{r.config.spec ? treegroups::to_json(*r.config.spec) : nlohmann::json(), r.config.seed, r.config.depth};
  auto j = provenance_json(p);
  j["report"] = "suite";
  j["suite"] = r.config.suite;
  j["degree"] = r.config.degree;
  j["trials"] = r.config.trials;
  j["cap"] = r.config.cap;
  auto claims = nlohmann::json::array();
  for (const auto &c : r.results) {
    claims.push_back({{"id", c.claim.id},
                      {"operation", c.claim.operation},
                      {"relation", c.claim.relation},
                      {"expected", c.claim.expected},
                      {"tolerance", format_double(c.claim.tolerance)},
                      {"when", c.claim.when},
                      {"status", to_string(c.status)},
                      {"value", c.value ? nlohmann::json(to_string(*c.value)) : nlohmann::json()},
                      {"expected_value", c.expected ? nlohmann::json(to_string(*c.expected)) : nlohmann::json()},
                      {"note", c.note}});
  }
  j["claims"] = std::move(claims);
  j["summary"] = {{"pass", r.count(Status::Pass)},       {"fail", r.count(Status::Fail)},
                  {"error", r.count(Status::Error)},     {"capacity", r.count(Status::Capacity)},
                  {"skipped", r.count(Status::Skipped)}, {"report", r.count(Status::Reported)},
                  {"exit_code", r.exit_code()}};
  return j;
}

inline std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string to_csv(const SuiteReport &r) {
  std::ostringstream out;
  out << "id,operation,relation,expected,value,status,note\n";
  for (const auto &c : r.results)
    out << csv_field(c.claim.id) << ',' << csv_field(c.claim.operation) << ',' << csv_field(c.claim.relation) << ','
        << csv_field(c.claim.expected) << ',' << csv_field(c.value ? to_string(*c.value) : "") << ','
        << to_string(c.status) << ',' << csv_field(c.note) << '\n';
  return out.str();
}

}  // namespace treegroups::suite

#endif  // TREEGROUPS_SUITE_HPP
