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

#ifndef TREEGROUPS_CONSTRUCTIONS_GS_HPP
#define TREEGROUPS_CONSTRUCTIONS_GS_HPP

#include <optional>
#include <string>
#include <vector>

#include "treegroups/exact.hpp"
#include "treegroups/group.hpp"
#include "treegroups/sampling.hpp"

namespace treegroups {

/// The per-level generator family: S_0 = <sigma> at the root, S_1 = sigma^a
/// on every level-1 vertex (the diagonal), and S_k = S_{k-1} x ... x S_{k-1}.
/// Concretely, an element of S_k (k >= 1) picks one power sigma^a_u for each
/// vertex u of level k-1 and puts it on every child of u.
struct GSSpec {
  Degree degree;
  Perm sigma;

  /// sigma defaults to the standard cycle i -> i+1 mod d.
  explicit GSSpec(Degree d) : GSSpec(d, Perm::standard_cycle(d)) {}

  GSSpec(Degree d, Perm s) : degree(d), sigma(std::move(s)) {
    if (sigma.size() != d) throw ShapeError("sigma has wrong degree");
    if (!sigma.is_full_cycle()) throw PreconditionError("sigma must be a d-cycle");
  }
};

/// |S_k|: d for k = 0, 1 and |S_{k-1}|^d afterwards.
inline BigInt gs_factor_order(int d, int k) {
  BigInt s = d;
  for (int i = 2; i <= k; ++i) s = ipow(s, static_cast<unsigned long long>(d));
  return s;
}

/// Element of S_k with exponent a_u for the u-th vertex of the relevant level.
inline Portrait gs_factor_element(const GSSpec &spec, int depth, int k, const std::vector<int> &exponents) {
  const int d = spec.degree;
  if (k < 0 || k >= depth) throw RangeError("factor level out of range");
  const Portrait blank = Portrait::identity(spec.degree, depth);
  std::vector<std::uint8_t> flat(blank.flat_labels().begin(), blank.flat_labels().end());
  auto put = [&](std::size_t vertex_index, int exponent) {
    const Perm p = spec.sigma.power(exponent);
    std::copy(p.images().begin(), p.images().end(), flat.begin() + static_cast<std::ptrdiff_t>(vertex_index * d));
  };
  if (k == 0) {
    if (exponents.size() != 1) throw ShapeError("S_0 takes one exponent");
    put(0, exponents[0]);
  } else {
    const std::size_t parents = level_size(d, k - 1);
    if (exponents.size() != parents) throw ShapeError("S_k takes one exponent per vertex of level k-1");
    const std::size_t start = internal_vertex_count(d, k);
    for (std::size_t u = 0; u < parents; ++u)
      for (int j = 0; j < d; ++j) put(start + u * d + j, exponents[u]);
  }
  return Portrait::from_flat(spec.degree, depth, std::move(flat));
}

/// pi_n(G_S), kept in product form: every element is s_0 s_1 ... s_{n-1}
/// with s_k in S_k, uniquely. The order is symbolic; materialize() enumerates.
class GSGroup {
 public:
  GSGroup(GSSpec spec, int depth) : spec_(std::move(spec)), depth_(depth) {
    if (depth < 1) throw RangeError("G_S quotient needs depth >= 1");
  }

  const GSSpec &spec() const { return spec_; }
  Degree degree() const { return spec_.degree; }
  int depth() const { return depth_; }

  BigInt order() const {
    BigInt o = 1;
    for (int k = 0; k < depth_; ++k) o *= gs_factor_order(degree(), k);
    return o;
  }

  /// log|pi_n(G_S)| = (1 + sum_{k=1}^{n-1} d^{k-1}) log d, as the exponent of d.
  BigInt log_order_exponent() const {
    BigInt e = 1;
    for (int k = 1; k < depth_; ++k) e += ipow(BigInt(degree().value()), static_cast<unsigned long long>(k - 1));
    return e;
  }

  /// sigma at the root, and for each level-(k-1) vertex u, sigma on u's children.
  std::vector<Portrait> generators() const {
    std::vector<Portrait> gens;
    gens.push_back(gs_factor_element(spec_, depth_, 0, {1}));
    for (int k = 1; k < depth_; ++k) {
      const std::size_t parents = level_size(degree(), k - 1);
      for (std::size_t u = 0; u < parents; ++u) {
        std::vector<int> e(parents, 0);
        e[u] = 1;
        gens.push_back(gs_factor_element(spec_, depth_, k, e));
      }
    }
    return gens;
  }

  Portrait sample_factor(int k, Rng &rng) const {
    const std::size_t n = k == 0 ? 1 : level_size(degree(), k - 1);
    std::vector<int> e(n);
    for (auto &x : e) x = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(degree().value())));
    return gs_factor_element(spec_, depth_, k, e);
  }

  /// Exactly uniform on pi_n(G_S): independent uniform factors, multiplied in level order.
  Portrait sample(Rng &rng) const {
    Portrait g = sample_factor(0, rng);
    for (int k = 1; k < depth_; ++k) g = compose(g, sample_factor(k, rng));
    return g;
  }

  FiniteTreeGroup materialize(std::size_t cap = FiniteTreeGroup::kDefaultCap) const {
    if (order() > cap) throw CapacityError("G_S quotient of order " + order().str() + " exceeds cap", 0);
    return enumerate_closure(degree(), depth_, generators(), cap);
  }

 private:
  GSSpec spec_;
  int depth_;
};

inline GSGroup gs_group(const GSSpec &spec, int n) { return GSGroup(spec, n); }

/// g_tau for tau = (sigma^e_0, ..., sigma^e_{d-1}): trivial root label, and
/// every vertex of level >= 1 whose last letter is j carries sigma^e_j.
inline Portrait g_tau(const GSSpec &spec, const std::vector<int> &exponents, int depth) {
  const int d = spec.degree;
  if (static_cast<int>(exponents.size()) != d) throw ShapeError("tau needs d exponents");
  std::vector<Perm> child_labels;
  for (int e : exponents) child_labels.push_back(spec.sigma.power(e));
  const std::size_t n = internal_vertex_count(d, depth);
  std::vector<std::uint8_t> flat(n * d);
  for (int j = 0; j < d && n; ++j) flat[j] = static_cast<std::uint8_t>(j);
  for (std::size_t v = 1; v < n; ++v) {
    const auto &p = child_labels[(v - 1) % d];  // BFS index v = parent*d + 1 + letter
    std::copy(p.images().begin(), p.images().end(), flat.begin() + static_cast<std::ptrdiff_t>(v * d));
  }
  return Portrait::from_flat(spec.degree, depth, std::move(flat));
}

/// g_{tau^rho} with tau^rho = (sigma^{1^rho}, ..., sigma^{d^rho}) over
/// positions 1..d. With 0-based letters, child j gets sigma^(rho(j) + 1).
inline Portrait lemma_generator(const GSSpec &spec, const Perm &rho, int depth) {
  if (rho.size() != spec.degree) throw ShapeError("rho has wrong degree");
  std::vector<int> e(spec.degree.value());
  for (int j = 0; j < spec.degree; ++j) e[j] = rho(j) + 1;
  return g_tau(spec, e, depth);
}

inline Portrait lemma_generator(Degree d, const Perm &rho, int depth) { return lemma_generator(GSSpec(d), rho, depth); }

/// Every exponent vector in [0, d)^d, lexicographic.
inline std::vector<std::vector<int>> all_tau_exponents(int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(d, 0);
  while (true) {
    out.push_back(e);
    int i = d - 1;
    while (i >= 0 && ++e[i] == d) e[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

/// Structural facts the lemma construction relies on, evaluated on the
/// enumerated quotients.
struct LemmaChecks {
  bool h_normal_in_g;
  bool complete_monodromy;  // pi_1(G) == pi_1(H)
  bool pi2_order;           // |pi_2(G)| == d * d^d
  /// A conjugate s^-1 h s outside H when h_normal_in_g is false.
  std::optional<Portrait> normality_witness;

  bool all() const { return h_normal_in_g && complete_monodromy && pi2_order; }
};

struct LemmaGroups {
  GSSpec spec;
  FiniteTreeGroup G;  // <H, g_tau>
  FiniteTreeGroup H;  // G_S
  LemmaChecks checks;

  /// Throws WitnessViolation naming the first failed check.
  void require_checks() const {
    if (!checks.h_normal_in_g) throw WitnessViolation("H is not normal in G");
    if (!checks.complete_monodromy) throw WitnessViolation("pi_1(G) != pi_1(H)");
    if (!checks.pi2_order) throw WitnessViolation("|pi_2(G)| != d * d^d");
  }
};

/// pi_n(H) and pi_n(G) for H = G_S and G = <H, g_tau : tau in S_0^d>, with
/// the checks normality of H, pi_1(G) = pi_1(H) and |pi_2(G)| = d * d^d
/// evaluated and returned. For d >= 3 normality fails already at depth 2:
/// the top cycle permutes the coordinates of tau, and commutators
/// tau^-1 tau^sigma are not diagonal.
inline LemmaGroups lemma_group(const GSSpec &spec, int depth, std::size_t cap = FiniteTreeGroup::kDefaultCap) {
  const int d = spec.degree;
  if (depth < 2) throw RangeError("lemma groups need depth >= 2");
  const GSGroup gs(spec, depth);
  auto H = gs.materialize(cap);
  auto gens = gs.generators();
  for (const auto &e : all_tau_exponents(d)) gens.push_back(g_tau(spec, e, depth));
  auto G = enumerate_closure(spec.degree, depth, gens, cap);
  if (!H.is_subset_of(G)) throw WitnessViolation("H is not contained in G");
  LemmaChecks checks{true, false, false, std::nullopt};
  for (const auto &s : G.generating_set()) {
    const Portrait s_inv = invert(s);
    for (const auto &h : H.generating_set()) {
      auto c = compose(compose(s_inv, h), s);
      if (!H.contains(c)) {
        checks.h_normal_in_g = false;
        checks.normality_witness = std::move(c);
        break;
      }
    }
    if (!checks.h_normal_in_g) break;
  }
  checks.complete_monodromy = G.truncated(1).same_elements(H.truncated(1));
  const BigInt expected = BigInt(d) * ipow(BigInt(d), static_cast<unsigned long long>(d));
  checks.pi2_order = BigInt(G.truncated(2).size()) == expected;
  return {spec, std::move(G), std::move(H), std::move(checks)};
}

inline LemmaGroups lemma_group(Degree d, int depth, std::size_t cap = FiniteTreeGroup::kDefaultCap) {
  return lemma_group(GSSpec(d), depth, cap);
}

/// |pi_n(G) : pi_n(H)| for n >= 2 when H is normal in G (d = 2).
inline BigInt lemma_index(int d) { return ipow(BigInt(d), static_cast<unsigned long long>(d - 1)); }

/// The coset structure below (index d^(d-1) at every depth, g_tau
/// transversal) holds only where H is normal in G, i.e. for d = 2.
inline bool lemma_has_structured_sampler(int d) { return d == 2; }

/// Right transversal of H in G: g_tau for tau with last exponent 0.
inline std::vector<Portrait> lemma_transversal(const GSSpec &spec, int depth) {
  std::vector<Portrait> out;
  for (const auto &e : all_tau_exponents(spec.degree))
    if (e.back() == 0) out.push_back(g_tau(spec, e, depth));
  return out;
}

/// Exactly uniform sampler for pi_n(G) of the lemma family without
/// enumeration: a uniform element of H (product form) times a uniform coset
/// representative. Only available when lemma_has_structured_sampler(d).
class LemmaSampler {
 public:
  LemmaSampler(const GSSpec &spec, int depth) : H_(spec, depth), transversal_(lemma_transversal(spec, depth)) {
    if (depth < 2) throw RangeError("lemma groups need depth >= 2");
    if (!lemma_has_structured_sampler(spec.degree))
      throw PreconditionError("no validated coset sampler for the lemma group with d >= 3");
  }

  Portrait sample(Rng &rng) const {
    Portrait h = H_.sample(rng);
    return compose(h, transversal_[uniform_below(rng, transversal_.size())]);
  }

  BigInt order() const { return H_.order() * transversal_.size(); }
  const std::vector<Portrait> &transversal() const { return transversal_; }

 private:
  GSGroup H_;
  std::vector<Portrait> transversal_;
};

}  // namespace treegroups

#endif  // TREEGROUPS_CONSTRUCTIONS_GS_HPP
