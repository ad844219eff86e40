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

#ifndef TREEGROUPS_SPEC_HPP
#define TREEGROUPS_SPEC_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "treegroups/codec.hpp"
#include "treegroups/constructions/affine.hpp"
#include "treegroups/constructions/gh.hpp"
#include "treegroups/constructions/gs.hpp"
#include "treegroups/constructions/pattern.hpp"
#include "treegroups/sampling.hpp"
#include "treegroups/spectra/log_order.hpp"

namespace treegroups {

struct GroupSpec;

/// Portraits given as text. Shallower texts are padded with trivial labels
/// at the requested depth, deeper ones truncated. No generators: trivial group.
struct GeneratorsFamily {
  Degree degree;
  std::vector<std::string> generators;
};

struct AutFamily {
  Degree degree;
};

/// `windows` are either the allowed depth-D portraits themselves or, with
/// `generate`, generators of the pattern subgroup.
struct PatternFamily {
  Degree degree;
  int pattern_depth;
  std::vector<std::string> windows;
  bool generate;
};

struct GSFamily {
  GSSpec gs;
};

/// The lemma group G = <H, g_tau> over H = G_S.
struct LemmaFamily {
  GSSpec gs;
};

struct AffineFamily {
  Degree degree;
  AffinePart part;
};

struct GHFamily {
  std::shared_ptr<const GroupSpec> outer;
  std::shared_ptr<const GroupSpec> inner;
};

struct GroupSpec {
  std::variant<GeneratorsFamily, AutFamily, PatternFamily, GSFamily, LemmaFamily, AffineFamily, GHFamily> family;

  Degree degree() const;
  std::string family_name() const;
};

namespace detail {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

inline const nlohmann::json &require_key(const nlohmann::json &j, const char *key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'", 0);
  return j.at(key);
}

inline Degree json_degree(const nlohmann::json &j) {
  const auto &v = require_key(j, "degree");
  if (!v.is_number_integer()) throw ParseError("'degree' must be an integer", 0);
  try {
    return Degree(v.get<int>());
  } catch (const std::invalid_argument &e) {
    throw ParseError(e.what(), 0);
  }
}

inline std::vector<std::string> json_strings(const nlohmann::json &j, const char *key) {
  const auto &v = require_key(j, key);
  if (!v.is_array()) throw ParseError(std::string("'") + key + "' must be an array of strings", 0);
  std::vector<std::string> out;
  for (const auto &x : v) {
    if (!x.is_string()) throw ParseError(std::string("'") + key + "' must be an array of strings", 0);
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline GSSpec json_gs(const nlohmann::json &j) {
  const Degree d = json_degree(j);
  if (!j.contains("sigma")) return GSSpec(d);
  if (!j.at("sigma").is_string()) throw ParseError("'sigma' must be permutation text", 0);
  try {
    const auto p = parse_portrait(j.at("sigma").get<std::string>(), d, 1);
    return GSSpec(d, p.label(Vertex::root()));
  } catch (const PreconditionError &e) {
    throw ParseError(e.what(), 0);
  }
}

/// Parses a portrait at exactly `depth`, truncating deeper text.
inline Portrait parse_at_depth(const std::string &text, Degree d, int depth) {
  const Portrait natural = parse_portrait(text, d);
  if (natural.depth() >= depth) return truncate(natural, depth);
  return parse_portrait(text, d, depth);
}

}  // namespace detail

inline GroupSpec spec_from_json(const nlohmann::json &j) {
  if (!j.is_object()) throw ParseError("group spec must be a JSON object", 0);
  const auto &fam = detail::require_key(j, "family");
  if (!fam.is_string()) throw ParseError("'family' must be a string", 0);
  const auto name = fam.get<std::string>();
  if (name == "generators") return {GeneratorsFamily{detail::json_degree(j), detail::json_strings(j, "generators")}};
  if (name == "aut") return {AutFamily{detail::json_degree(j)}};
  if (name == "pattern") {
    const auto &D = detail::require_key(j, "pattern_depth");
    if (!D.is_number_integer() || D.get<int>() < 1) throw ParseError("'pattern_depth' must be a positive integer", 0);
    const bool generate = j.contains("pattern_generators");
    if (generate == j.contains("patterns")) throw ParseError("give exactly one of 'patterns' and 'pattern_generators'", 0);
    return {PatternFamily{detail::json_degree(j), D.get<int>(),
                          detail::json_strings(j, generate ? "pattern_generators" : "patterns"), generate}};
  }
  if (name == "gs") return {GSFamily{detail::json_gs(j)}};
  if (name == "lemma") return {LemmaFamily{detail::json_gs(j)}};
  if (name == "affine") {
    const auto &part = detail::require_key(j, "part");
    if (part != "G" && part != "H") throw ParseError("'part' must be \"G\" or \"H\"", 0);
    return {AffineFamily{detail::json_degree(j), part == "G" ? AffinePart::G : AffinePart::H}};
  }
  if (name == "gh") {
    auto outer = std::make_shared<const GroupSpec>(spec_from_json(detail::require_key(j, "outer")));
    auto inner = std::make_shared<const GroupSpec>(spec_from_json(detail::require_key(j, "inner")));
    if (outer->degree() != inner->degree()) throw ParseError("outer and inner degrees differ", 0);
    return {GHFamily{std::move(outer), std::move(inner)}};
  }
  throw ParseError("unknown family '" + name + "'", 0);
}

inline GroupSpec parse_spec(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  return spec_from_json(j);
}

inline nlohmann::json to_json(const GroupSpec &spec) {
  using nlohmann::json;
  auto sigma_text = [](const GSSpec &gs) {
    return format_portrait(Portrait::from_labels(gs.degree, 1, {gs.sigma}));
  };
  return std::visit(
      detail::overloaded{
          [](const GeneratorsFamily &f) {
            return json{{"family", "generators"}, {"degree", f.degree.value()}, {"generators", f.generators}};
          },
          [](const AutFamily &f) { return json{{"family", "aut"}, {"degree", f.degree.value()}}; },
          [](const PatternFamily &f) {
            return json{{"family", "pattern"},
                        {"degree", f.degree.value()},
                        {"pattern_depth", f.pattern_depth},
                        {f.generate ? "pattern_generators" : "patterns", f.windows}};
          },
          [&](const GSFamily &f) {
            return json{{"family", "gs"}, {"degree", f.gs.degree.value()}, {"sigma", sigma_text(f.gs)}};
          },
          [&](const LemmaFamily &f) {
            return json{{"family", "lemma"}, {"degree", f.gs.degree.value()}, {"sigma", sigma_text(f.gs)}};
          },
          [](const AffineFamily &f) {
            return json{{"family", "affine"}, {"degree", f.degree.value()}, {"part", to_string(f.part)}};
          },
          [](const GHFamily &f) { return json{{"family", "gh"}, {"outer", to_json(*f.outer)}, {"inner", to_json(*f.inner)}}; },
      },
      spec.family);
}

inline Degree GroupSpec::degree() const {
  return std::visit(detail::overloaded{
                        [](const GSFamily &f) { return f.gs.degree; },
                        [](const LemmaFamily &f) { return f.gs.degree; },
                        [](const GHFamily &f) { return f.outer->degree(); },
                        [](const auto &f) { return f.degree; },
                    },
                    family);
}

inline std::string GroupSpec::family_name() const {
  static const char *const names[] = {"generators", "aut", "pattern", "gs", "lemma", "affine", "gh"};
  return names[family.index()];
}

inline PatternSet pattern_set(const PatternFamily &f) {
  std::vector<Portrait> windows;
  for (const auto &w : f.windows) windows.push_back(detail::parse_at_depth(w, f.degree, f.pattern_depth));
  if (f.generate) return PatternSet::generated_by(f.degree, f.pattern_depth, windows);
  return PatternSet(f.degree, f.pattern_depth, std::move(windows));
}

inline PatternSet aut_pattern(Degree d) {
  std::vector<Portrait> all;
  const BigInt n = factorial(d);
  for (std::uint64_t r = 0; r < n; ++r) all.push_back(Portrait::from_labels(d, 1, {Perm::from_rank(d, r)}));
  return PatternSet(d, 1, std::move(all));
}

/// Smallest depth at which the spec can be materialized.
inline int min_depth(const GroupSpec &spec) {
  if (const auto *f = std::get_if<PatternFamily>(&spec.family)) return f->pattern_depth;
  if (const auto *f = std::get_if<GHFamily>(&spec.family)) return std::max(min_depth(*f->outer), min_depth(*f->inner));
  return 0;
}

/// pi_depth of the group the spec describes, enumerated.
inline FiniteTreeGroup materialize(const GroupSpec &spec, int depth, std::size_t cap = FiniteTreeGroup::kDefaultCap) {
  if (depth < 0) throw RangeError("depth must be >= 0");
  return std::visit(
      detail::overloaded{
          [&](const GeneratorsFamily &f) {
            std::vector<Portrait> gens;
            for (const auto &t : f.generators) gens.push_back(detail::parse_at_depth(t, f.degree, depth));
            return enumerate_closure(f.degree, depth, gens, cap);
          },
          [&](const AutFamily &f) {
            if (depth == 0) return enumerate_closure(f.degree, 0, {}, cap);
            return pattern_group(aut_pattern(f.degree), depth, cap);
          },
          [&](const PatternFamily &f) {
            if (depth < f.pattern_depth) throw RangeError("pattern family needs depth >= pattern depth");
            return pattern_group(pattern_set(f), depth, cap);
          },
          [&](const GSFamily &f) { return gs_group(f.gs, depth).materialize(cap); },
          [&](const LemmaFamily &f) {
            if (depth < 2) return lemma_group(f.gs, 2, cap).G.truncated(depth);
            return lemma_group(f.gs, depth, cap).G;
          },
          [&](const AffineFamily &f) { return affine_model(f.degree, depth, f.part, cap); },
          [&](const GHFamily &f) { return gh_group(materialize(*f.outer, depth, cap), materialize(*f.inner, depth, cap)); },
      },
      spec.family);
}

/// An exactly uniform sampler on pi_depth of a spec, with the strategy used.
struct Sampler {
  std::string strategy;  // "product", "coset" or "enumeration"
  BigInt order;
  std::function<Portrait(Rng &)> draw;
};

/// Product sampler for G_S, coset sampler for the lemma group where it is
/// valid (d = 2), and otherwise an index into the enumerated group.
/// Throws CapacityError when enumeration is needed but exceeds `cap`.
inline Sampler make_sampler(const GroupSpec &spec, int depth, std::size_t cap = FiniteTreeGroup::kDefaultCap) {
  if (const auto *f = std::get_if<GSFamily>(&spec.family)) {
    auto G = std::make_shared<GSGroup>(f->gs, depth);
    return {"product", G->order(), [G](Rng &rng) { return G->sample(rng); }};
  }
  if (const auto *f = std::get_if<LemmaFamily>(&spec.family); f && depth >= 2 && lemma_has_structured_sampler(f->gs.degree)) {
    auto S = std::make_shared<LemmaSampler>(f->gs, depth);
    return {"coset", S->order(), [S](Rng &rng) { return S->sample(rng); }};
  }
  auto G = std::make_shared<FiniteTreeGroup>(materialize(spec, depth, cap));
  return {"enumeration", G->order(), [G](Rng &rng) { return uniform_sample(*G, rng); }};
}

/// log|pi_n(G)| from the structure of the family, without enumeration, or
/// nullopt when no closed form is known.
///  - Aut T: ((d^n - 1)/(d - 1)) log d!.
///  - G_S: (1 + sum_{k=1}^{n-1} d^{k-1}) log d.
///  - lemma group, d = 2: log|pi_n(G_S)| + (d - 1) log d for n >= 2.
///  - pattern and affine families whose windows' sections descend:
///    log|P| + sum_{m=D}^{n-1} d^{m-D+1} log|K|, K = ker(P -> pi_{D-1}(P)).
inline std::optional<LogOrder> closed_form_log_order(const GroupSpec &spec, int n) {
  auto pattern_form = [n](const PatternSet &P) -> std::optional<LogOrder> {
    const int D = P.pattern_depth();
    if (n < D || !P.sections_descend()) return std::nullopt;
    const int d = P.degree();
    const BigInt kernel = BigInt(P.allowed().size()) / P.as_group().truncated(D - 1).size();
    LogOrder out = LogOrder::of(P.allowed().size());
    for (int m = D; m < n; ++m) out.add(kernel, ipow(BigInt(d), static_cast<unsigned long long>(m - D + 1)));
    return out;
  };
  return std::visit(
      detail::overloaded{
          [&](const GeneratorsFamily &f) -> std::optional<LogOrder> {
            if (f.generators.empty()) return LogOrder();
            return std::nullopt;
          },
          [&](const AutFamily &f) -> std::optional<LogOrder> { return aut_log_order(f.degree, n); },
          [&](const PatternFamily &f) { return pattern_form(pattern_set(f)); },
          [&](const GSFamily &f) -> std::optional<LogOrder> {
            if (n == 0) return LogOrder();
            LogOrder out;
            out.add(f.gs.degree.value(), gs_group(f.gs, n).log_order_exponent());
            return out;
          },
          [&](const LemmaFamily &f) -> std::optional<LogOrder> {
            const int d = f.gs.degree;
            if (!lemma_has_structured_sampler(d)) return std::nullopt;
            if (n == 0) return LogOrder();
            LogOrder out;
            out.add(d, gs_group(f.gs, n).log_order_exponent() + (n >= 2 ? d - 1 : 0));
            return out;
          },
          [&](const AffineFamily &f) { return pattern_form(affine_pattern(f.degree, f.part)); },
          [](const GHFamily &) -> std::optional<LogOrder> { return std::nullopt; },
      },
      spec.family);
}

/// Closed form when available, otherwise log of the enumerated order.
inline LogOrder log_order(const GroupSpec &spec, int n, std::size_t cap = FiniteTreeGroup::kDefaultCap) {
  if (auto c = closed_form_log_order(spec, n)) return *c;
  return LogOrder::of(materialize(spec, n, cap).size());
}

}  // namespace treegroups

#endif  // TREEGROUPS_SPEC_HPP
