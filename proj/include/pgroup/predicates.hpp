#pragma once

// Structural predicates on finite p-groups with witnessed verdicts: regular
// power structure, powerful, regular, metacyclic, p^k-abelian, Hall's
// collection congruence, and the basic facts about powerful groups.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pgroup/structure.hpp"

namespace pgroup {

/// Pair-quantified checks are exhaustive up to `exhaustive_limit` elements and
/// use `samples` seeded uniform pairs above it.
struct PairOptions {
  std::size_t exhaustive_limit = 729;
  std::size_t samples = 100'000;
  std::uint64_t seed = 0;
};

struct PredicateWitness {
  std::string kind;
  std::vector<ElementId> elements;
  std::optional<ElementSet> subgroup;
};

struct Verdict {
  std::string predicate;
  bool holds = true;
  /// True when a quantifier was sampled rather than exhausted.
  bool sampled = false;
  PredicateWitness witness;
  std::string detail;
};

// ---- regular power structure ------------------------------------------------

struct ConditionResult {
  int i = 0;
  bool holds = true;
  /// cond1: element of the agemo outside the power image; cond2: element of
  /// omega of too-large order.
  std::optional<ElementId> witness;
  /// cond1: |agemo|, |power image|; cond2: |omega|, |low-order set|;
  /// cond3: |G : agemo|, |omega|.
  std::uint64_t left = 0;
  std::uint64_t right = 0;
};

struct RpsReport {
  int e = 0;
  std::vector<ConditionResult> cond1, cond2, cond3;
  bool overall = true;

  const ConditionResult* first_failure(int which) const {
    const auto& v = which == 1 ? cond1 : which == 2 ? cond2 : cond3;
    for (const auto& c : v)
      if (!c.holds) return &c;
    return nullptr;
  }
  bool holds(int which) const { return first_failure(which) == nullptr; }
};

/// Conditions are checked for i = 1..e where p^e is the exponent; beyond that
/// every term is trivial or the whole group.
inline RpsReport has_regular_power_structure(const GroupHandle& G) {
  RpsReport r;
  r.e = exponent_log(G);
  for (int i = 1; i <= r.e; ++i) {
    const ElementSet ag = agemo(G, i);
    const ElementSet img = power_image(G, i);
    ConditionResult c1{i, ag == img, ag.first_outside(img), ag.size(), img.size()};
    const ElementSet om = omega(G, i);
    const ElementSet low = low_order_set(G, i);
    ConditionResult c2{i, om == low, om.first_outside(low), om.size(), low.size()};
    const std::uint64_t index = G.size() / ag.size();
    ConditionResult c3{i, index == om.size(), std::nullopt, index, om.size()};
    r.overall = r.overall && c1.holds && c2.holds && c3.holds;
    r.cond1.push_back(c1);
    r.cond2.push_back(c2);
    r.cond3.push_back(c3);
  }
  return r;
}

// ---- powerful ---------------------------------------------------------------

/// [G,G] <= G^p for odd p; [G,G] <= G^4 for p = 2.
inline ElementSet powerful_bound(const GroupHandle& G) {
  return agemo(G, G.prime() == 2 ? 2 : 1);
}

inline Verdict is_powerful(const GroupHandle& G) {
  Verdict v;
  v.predicate = "powerful";
  const ElementSet bound = powerful_bound(G);
  // The bound is characteristic, so it suffices to test commutators of generators.
  const auto& gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const ElementId c = G.commutator(gens[j], gens[i]);
      if (!bound.contains(c)) {
        v.holds = false;
        v.witness = {"commutator outside G^" + std::string(G.prime() == 2 ? "4" : "p"),
                     {c, gens[j], gens[i]},
                     bound};
        v.detail = "[" + G.label(gens[j]) + "," + G.label(gens[i]) + "] = " + G.label(c);
        return v;
      }
    }
  return v;
}

// ---- regular ----------------------------------------------------------------

namespace detail {

/// Runs `test(x, y)` over all pairs (lexicographic) or over seeded samples,
/// stopping at the first failure.
template <class Test>
std::optional<std::pair<ElementId, ElementId>> first_failing_pair(const GroupHandle& G,
                                                                  const PairOptions& opts,
                                                                  bool& sampled, Test test) {
  const std::size_t N = G.size();
  if (N <= opts.exhaustive_limit) {
    sampled = false;
    for (ElementId x = 0; x < N; ++x)
      for (ElementId y = 0; y < N; ++y)
        if (!test(x, y)) return std::pair{x, y};
    return std::nullopt;
  }
  sampled = true;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(N - 1));
  for (std::size_t t = 0; t < opts.samples; ++t) {
    const ElementId x = pick(rng);
    const ElementId y = pick(rng);
    if (!test(x, y)) return std::pair{x, y};
  }
  return std::nullopt;
}

}  // namespace detail

/// (x^p y^p)^{-1} (xy)^p for the regularity test.
inline ElementId regularity_defect(const GroupHandle& G, ElementId x, ElementId y) {
  const long long p = G.prime();
  return G.mul(G.inv(G.mul(G.power(x, p), G.power(y, p))), G.power(G.mul(x, y), p));
}

/// Agemo_1 of <x, y>': the subgroup the regularity defect must lie in.
inline ElementSet regularity_modulus(const GroupHandle& G, ElementId x, ElementId y) {
  const ElementId c = G.commutator(x, y);
  const ElementId cs[1] = {c};
  const ElementId conj[2] = {x, y};
  const ElementSet D = normal_closure(G, std::span<const ElementId>(cs), std::span<const ElementId>(conj));
  return agemo(G, 1, D);
}

inline bool regular_pair(const GroupHandle& G, ElementId x, ElementId y) {
  const ElementId d = regularity_defect(G, x, y);
  if (d == 0) return true;
  return regularity_modulus(G, x, y).contains(d);
}

inline Verdict is_regular(const GroupHandle& G, const PairOptions& opts = {}) {
  Verdict v;
  v.predicate = "regular";
  const auto bad = detail::first_failing_pair(G, opts, v.sampled,
                                              [&](ElementId x, ElementId y) { return regular_pair(G, x, y); });
  if (bad) {
    v.holds = false;
    const ElementId d = regularity_defect(G, bad->first, bad->second);
    v.witness = {"pair whose p-th power defect is outside agemo_1(<x,y>')",
                 {bad->first, bad->second, d},
                 regularity_modulus(G, bad->first, bad->second)};
    v.detail = "x = " + G.label(bad->first) + ", y = " + G.label(bad->second) +
               ", defect = " + G.label(d);
  }
  return v;
}

// ---- metacyclic -------------------------------------------------------------

/// Searches cyclic subgroups <x> by decreasing order for a normal one with
/// cyclic quotient. Witness elements: {x, g} with G = <x> <g>.
inline Verdict is_metacyclic(const GroupHandle& G) {
  Verdict v;
  v.predicate = "metacyclic";
  const std::size_t N = G.size();
  std::vector<ElementId> by_order(N);
  for (std::size_t a = 0; a < N; ++a) by_order[a] = static_cast<ElementId>(a);
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](ElementId a, ElementId b) { return G.order_of(a) > G.order_of(b); });
  std::vector<char> done(N, 0);
  const auto p = static_cast<std::uint64_t>(G.prime());
  for (ElementId x : by_order) {
    if (done[x]) continue;
    const ElementSet C = closure(G, {x});
    // Generators of the same cyclic subgroup need not be retried.
    for (ElementId m : C.members)
      if (G.order_of(m) == C.size()) done[m] = 1;
    if (!is_normal(G, C)) continue;
    const std::uint64_t need = N / C.size();
    for (ElementId g = 0; g < N; ++g) {
      // Order of gC in G/C.
      std::uint64_t ord = 1;
      ElementId y = g;
      while (!C.contains(y)) {
        y = G.power(y, static_cast<long long>(p));
        ord *= p;
      }
      if (ord == need) {
        v.witness = {"cyclic normal N = <x> with G/N = <gN>", {x, g}, C};
        v.detail = "N = <" + G.label(x) + ">, G/N = <" + G.label(g) + " N>";
        return v;
      }
    }
  }
  v.holds = false;
  v.witness.kind = "no cyclic normal subgroup with cyclic quotient";
  v.detail = "exhausted all cyclic subgroups";
  return v;
}

// ---- p^k-abelian ------------------------------------------------------------

inline Verdict is_pk_abelian(const GroupHandle& G, int k, const PairOptions& opts = {}) {
  Verdict v;
  v.predicate = "p^" + std::to_string(k) + "-abelian";
  const auto q = static_cast<long long>(ipow_u(static_cast<std::uint64_t>(G.prime()), k));
  std::vector<ElementId> pw(G.size());
  for (std::size_t a = 0; a < G.size(); ++a) pw[a] = G.power(static_cast<ElementId>(a), q);
  const auto bad = detail::first_failing_pair(G, opts, v.sampled, [&](ElementId x, ElementId y) {
    return pw[G.mul(x, y)] == G.mul(pw[x], pw[y]);
  });
  if (bad) {
    v.holds = false;
    v.witness = {"(xy)^{p^k} != x^{p^k} y^{p^k}", {bad->first, bad->second}, std::nullopt};
    v.detail = "x = " + G.label(bad->first) + ", y = " + G.label(bad->second);
  }
  return v;
}

// ---- Hall's collection congruence --------------------------------------------

struct HallCheck {
  bool holds = true;
  ElementId defect = 0;
  ElementSet modulus;
};

/// (xy)^{p^n} = x^{p^n} y^{p^n} modulo
///   gamma_2(T)^{p^n} gamma_p(T)^{p^{n-1}} ... gamma_{p^n}(T),  T = <x, y>.
inline HallCheck hall_congruence_check(const GroupHandle& G, ElementId x, ElementId y, int n) {
  HallCheck h;
  const auto p = static_cast<std::uint64_t>(G.prime());
  const auto q = static_cast<long long>(ipow_u(p, n));
  h.defect = G.mul(G.inv(G.mul(G.power(x, q), G.power(y, q))), G.power(G.mul(x, y), q));
  if (h.defect == 0) {
    h.modulus = trivial_subgroup();
    return h;
  }
  const ElementSet T = closure(G, {x, y});
  const SeriesReport lcs = lower_central_series(G, T);
  auto gamma = [&](std::uint64_t k) -> ElementSet {
    if (k - 1 < lcs.terms.size()) return lcs.terms[k - 1];
    return trivial_subgroup();
  };
  ClosureBuilder<GroupHandle> mod(G);
  for (int m = 0; m <= n; ++m) {
    const std::uint64_t k = m == 0 ? 2 : ipow_u(p, m);
    const ElementSet term = agemo(G, n - m, gamma(k));
    for (ElementId t : generators_of(term)) mod.add(t);
  }
  h.modulus = mod.result();
  h.holds = h.modulus.contains(h.defect);
  return h;
}

inline Verdict hall_congruence_all_pairs(const GroupHandle& G, int n, const PairOptions& opts = {}) {
  Verdict v;
  v.predicate = "hall-congruence(n=" + std::to_string(n) + ")";
  const auto bad = detail::first_failing_pair(G, opts, v.sampled, [&](ElementId x, ElementId y) {
    return hall_congruence_check(G, x, y, n).holds;
  });
  if (bad) {
    v.holds = false;
    v.witness = {"pair violating the congruence", {bad->first, bad->second}, std::nullopt};
    v.detail = "x = " + G.label(bad->first) + ", y = " + G.label(bad->second);
  }
  return v;
}

// ---- facts about powerful groups ---------------------------------------------

struct PowerfulFacts {
  bool holds = true;
  /// Failed statements, each with a witness element (or the identity).
  std::vector<std::pair<std::string, ElementId>> failures;
  int checked = 0;
};

/// For powerful G of exponent p^e:
///   (i)   G^{p^i} = {g^{p^i}}                     for 1 <= i <= e
///   (ii)  [G^{p^i}, G^{p^j}] <= [G,G]^{p^{i+j}}   for i, j >= 0, i + j <= e
///   (iii) gamma_i(G) <= G^{p^{i-1}}              for 1 <= i <= class + 1
inline PowerfulFacts powerful_facts_check(const GroupHandle& G) {
  if (!is_powerful(G).holds) throw PreconditionError("powerful_facts_check requires a powerful group");
  PowerfulFacts r;
  const int e = exponent_log(G);
  auto record = [&](bool ok, std::string what, ElementId w) {
    ++r.checked;
    if (!ok) {
      r.holds = false;
      r.failures.emplace_back(std::move(what), w);
    }
  };
  for (int i = 1; i <= e; ++i) {
    const ElementSet ag = agemo(G, i);
    const ElementSet img = power_image(G, i);
    record(ag == img, "(i) i=" + std::to_string(i), ag.first_outside(img).value_or(0));
  }
  const ElementSet D = derived_subgroup(G);
  for (int i = 0; i <= e; ++i)
    for (int j = 0; i + j <= e; ++j) {
      const ElementSet lhs = commutator_subgroup(G, agemo(G, i), agemo(G, j));
      const ElementSet rhs = agemo(G, i + j, D);
      record(lhs.is_subset_of(rhs), "(ii) i=" + std::to_string(i) + " j=" + std::to_string(j),
             lhs.first_outside(rhs).value_or(0));
    }
  const SeriesReport lcs = lower_central_series(G);
  for (std::size_t k = 1; k <= lcs.terms.size(); ++k) {
    const ElementSet& gk = lcs.terms[k - 1];
    const ElementSet bound = agemo(G, static_cast<int>(k) - 1);
    record(gk.is_subset_of(bound), "(iii) gamma_" + std::to_string(k),
           gk.first_outside(bound).value_or(0));
  }
  return r;
}

}  // namespace pgroup
