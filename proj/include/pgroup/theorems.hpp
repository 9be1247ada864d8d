#pragma once

// Verifiers and constructions for the main results on groups with a regular
// power structure and on powerful p-groups:
//   - the Hughes subgroup and its classification,
//   - the order bound |G| <= |G/G^p|^e and its proof chain,
//   - the order-p generator adjustment for 2-generator powerful groups,
//   - "every normal abelian subgroup cyclic => cyclic" at desk scale,
//   - [N, G] <= N^p for cyclic normal N,
//   - lifting a minimal generating set of H <= G to independent elements of
//     G / G^p, hence d(H) <= d(G) for powerful G.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgroup/predicates.hpp"

namespace pgroup {

// ---- Hughes subgroup ----------------------------------------------------------

enum class HughesClass { Trivial, WholeGroup, IndexP, Counterexample };

inline std::string to_string(HughesClass c) {
  switch (c) {
    case HughesClass::Trivial:
      return "trivial";
    case HughesClass::WholeGroup:
      return "whole-group";
    case HughesClass::IndexP:
      return "index-p";
    case HughesClass::Counterexample:
      return "counterexample";
  }
  return "?";
}

struct HughesVerdict {
  ElementSet hughes_subgroup;
  HughesClass classification = HughesClass::Trivial;
  /// |G : H_p(G)|.
  std::uint64_t index = 1;
  /// Set when the group was known to have a regular power structure.
  bool rps = false;
  /// For RPS groups: H_p = 1 when the exponent is p, H_p = G otherwise.
  bool refinement_holds = true;

  bool realizes_index_p(int p) const { return index == static_cast<std::uint64_t>(p); }
};

/// H_p(G): generated by the elements whose order is not p. The identity has
/// order 1 != p and is included; it does not change the generated subgroup.
inline ElementSet hughes_subgroup(const GroupHandle& G) {
  std::vector<ElementId> gens;
  const auto& ord = G.orders();
  for (std::size_t a = 0; a < G.size(); ++a)
    if (ord[a] != static_cast<std::uint64_t>(G.prime())) gens.push_back(static_cast<ElementId>(a));
  return closure(G, std::span<const ElementId>(gens));
}

/// Classification: H_p = 1 is `trivial` (C_p also has index p, reported via
/// `index`), H_p = G is `whole-group`, |G : H_p| = p is `index-p`, anything
/// else is a counterexample to Hughes' conjecture.
inline HughesVerdict hughes_verdict(const GroupHandle& G, std::optional<bool> rps = std::nullopt) {
  HughesVerdict v;
  v.hughes_subgroup = hughes_subgroup(G);
  v.index = G.size() / v.hughes_subgroup.size();
  if (v.hughes_subgroup.size() == 1)
    v.classification = HughesClass::Trivial;
  else if (v.hughes_subgroup.size() == G.size())
    v.classification = HughesClass::WholeGroup;
  else if (v.index == static_cast<std::uint64_t>(G.prime()))
    v.classification = HughesClass::IndexP;
  else
    v.classification = HughesClass::Counterexample;
  v.rps = rps.has_value() ? *rps : has_regular_power_structure(G).overall;
  if (v.rps) {
    const bool exp_p = exponent(G) <= static_cast<std::uint64_t>(G.prime());
    v.refinement_holds = exp_p ? v.classification == HughesClass::Trivial
                               : v.classification == HughesClass::WholeGroup;
  }
  return v;
}

// ---- order bound for groups with a regular power structure --------------------

struct BurnsideChainReport {
  int e = 0;
  std::uint64_t order = 1;
  /// |G / G^{p^{e-1}}| counted as cosets, and |G^{p^{e-1}}|.
  std::uint64_t top_quotient_order = 1;
  std::uint64_t top_agemo_order = 1;
  bool decomposition = true;
  /// G^{p^{e-1}} <= Omega_1(G).
  bool containment = true;
  /// |Omega_1(G)| = |G : G^p|.
  std::uint64_t omega1_order = 1;
  std::uint64_t frattini_quotient_order = 1;
  bool omega_index = true;
  /// |G| <= |G : G^p|^e.
  std::uint64_t derived_bound = 1;
  bool derived_bound_holds = true;

  std::optional<std::uint64_t> n_const;
  /// |G / G^{p^{e-1}}| <= n^{e-1}.
  bool quotient_bound_holds = true;
  /// |G : G^p| <= n.
  bool exponent_p_bound_holds = true;
  /// |G| <= n^e, with `sharp` on equality.
  bool bound_holds = true;
  bool sharp = false;

  bool all_hold() const {
    return decomposition && containment && omega_index && derived_bound_holds &&
           quotient_bound_holds && exponent_p_bound_holds && bound_holds;
  }
};

inline std::uint64_t count_cosets(const GroupHandle& G, const ElementSet& N) {
  std::vector<char> seen(G.size(), 0);
  std::uint64_t count = 0;
  for (std::size_t x = 0; x < G.size(); ++x) {
    if (seen[x]) continue;
    ++count;
    for (ElementId m : N.members) seen[G.mul(static_cast<ElementId>(x), m)] = 1;
  }
  return count;
}

/// Requires a regular power structure (the containment and the index equality
/// rest on it); throws PreconditionError otherwise.
inline BurnsideChainReport burnside_chain_verify(const GroupHandle& G,
                                                 std::optional<std::uint64_t> n_const = std::nullopt) {
  if (!has_regular_power_structure(G).overall)
    throw PreconditionError("burnside_chain_verify requires a regular power structure");
  BurnsideChainReport r;
  r.order = G.size();
  r.e = exponent_log(G);
  r.n_const = n_const;
  if (r.e == 0) {
    if (n_const) r.sharp = *n_const == 1;
    return r;
  }
  const ElementSet top = agemo(G, r.e - 1);
  r.top_agemo_order = top.size();
  r.top_quotient_order = count_cosets(G, top);
  r.decomposition = r.top_quotient_order * r.top_agemo_order == r.order;

  const ElementSet om1 = omega(G, 1);
  r.omega1_order = om1.size();
  r.containment = top.is_subset_of(om1);

  r.frattini_quotient_order = count_cosets(G, agemo(G, 1));
  r.omega_index = r.omega1_order == r.frattini_quotient_order;

  r.derived_bound = ipow_u(r.frattini_quotient_order, r.e);
  r.derived_bound_holds = r.order <= r.derived_bound;

  if (n_const) {
    const std::uint64_t n = *n_const;
    r.quotient_bound_holds = r.top_quotient_order <= ipow_u(n, r.e - 1);
    r.exponent_p_bound_holds = r.frattini_quotient_order <= n;
    const std::uint64_t bound = ipow_u(n, r.e);
    r.bound_holds = r.order <= bound;
    r.sharp = r.order == bound;
  }
  return r;
}

// ---- order-p generator adjustment ------------------------------------------

namespace detail {

inline ElementId lemma42_recurse(const GroupHandle& G, ElementId a, ElementId b) {
  const auto p = static_cast<long long>(G.prime());
  const int e = exponent_log(G);
  if (e == 0) throw PreconditionError("trivial group has no element of order p");
  if (e == 1) return G.order_of(b) == static_cast<std::uint64_t>(p) ? b : a;
  // Exponent p^{k+1}: recurse in G / G^{p^k}.
  const int k = e - 1;
  const QuotientHandle Q = quotient_handle(G, agemo(G, k));
  const ElementId dbar = lemma42_recurse(Q.handle, Q.coset_of[a], Q.coset_of[b]);
  const ElementId d = Q.representative[dbar];
  const ElementId dp = G.power(d, p);
  const auto pk = static_cast<long long>(ipow_u(static_cast<std::uint64_t>(p), k));
  for (long long lambda = 0; lambda < p; ++lambda) {
    if (G.power(a, lambda * pk) != dp) continue;
    ElementId c = G.mul(d, G.power(a, -lambda * (pk / p)));
    // c = 1 only when d is a power of a, i.e. G = <a> is cyclic.
    if (c == 0) c = G.power(a, static_cast<long long>(G.order_of(a)) / p);
    return c;
  }
  throw TheoremViolation("no lambda with d^p = a^{lambda p^k}");
}

}  // namespace detail

/// Given powerful G = <a, b> with G^p = <a^p>, returns c of order p with
/// G = <a, c>, following the induction on the exponent.
inline ElementId lemma42_construct(const GroupHandle& G, ElementId a, ElementId b) {
  if (!is_powerful(G).holds) throw PreconditionError("group is not powerful");
  if (closure(G, {a, b}).size() != G.size()) throw PreconditionError("G != <a, b>");
  if (!(agemo(G, 1) == closure(G, {G.power(a, G.prime())})))
    throw PreconditionError("G^p != <a^p>");
  const ElementId c = detail::lemma42_recurse(G, a, b);
  if (G.order_of(c) != static_cast<std::uint64_t>(G.prime()))
    throw TheoremViolation("constructed c = " + G.label(c) + " does not have order p");
  if (closure(G, {a, c}).size() != G.size())
    throw TheoremViolation("constructed c = " + G.label(c) + " does not generate G with a");
  return c;
}

/// First pair (a, b) in id order meeting the hypotheses of lemma42_construct:
/// G^p = <a^p> and G = <a, b>. Requires G powerful with d(G) <= 2.
inline std::optional<std::pair<ElementId, ElementId>> find_lemma42_pair(const GroupHandle& G) {
  const ElementSet ag1 = agemo(G, 1);
  for (ElementId a = 1; a < G.size(); ++a) {
    if (G.order_of(a) / static_cast<std::uint64_t>(G.prime()) != ag1.size()) continue;
    const ElementId ap = G.power(a, G.prime());
    if (!(closure(G, {ap}) == ag1)) continue;
    for (ElementId b = 0; b < G.size(); ++b)
      if (closure(G, {a, b}).size() == G.size()) return std::pair{a, b};
  }
  return std::nullopt;
}

// ---- normal abelian subgroups -------------------------------------------------

struct NormalAbelianOptions {
  /// Exhaustive subgroup enumeration up to p^4; sampled above.
  int exhaustive_max_log = 4;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
};

struct NormalAbelianReport {
  bool sampled = false;
  std::size_t subgroups_examined = 0;
  std::vector<ElementSet> normal_abelian;
  /// Every normal abelian subgroup found is cyclic.
  bool hypothesis = true;
  std::optional<ElementSet> non_cyclic_witness;
  bool group_cyclic = false;
  /// For odd p: hypothesis implies cyclic. Always true for p = 2 by convention
  /// (Q_8 shows the odd-p assumption is needed).
  bool theorem_consistent = true;
};

inline NormalAbelianReport normal_abelian_cyclic_check(const GroupHandle& G,
                                                       const NormalAbelianOptions& opts = {}) {
  NormalAbelianReport r;
  const int p = G.prime();
  const std::uint64_t limit = ipow_u(static_cast<std::uint64_t>(p), opts.exhaustive_max_log);
  std::vector<ElementSet> candidates;
  if (G.size() <= limit) {
    candidates = enumerate_subgroups(G, log_p(G.size(), p)).subgroups;
  } else {
    r.sampled = true;
    std::set<std::vector<ElementId>> seen;
    const auto& gens = G.generators();
    for (std::size_t x = 0; x < G.size(); ++x) {
      const ElementId xs[1] = {static_cast<ElementId>(x)};
      ElementSet S = normal_closure(G, std::span<const ElementId>(xs), std::span<const ElementId>(gens));
      if (seen.insert(S.members).second) candidates.push_back(std::move(S));
    }
    for (auto& S : sample_subgroups(G, opts.samples, 2, opts.seed).subgroups)
      if (seen.insert(S.members).second) candidates.push_back(std::move(S));
  }
  r.subgroups_examined = candidates.size();
  for (auto& S : candidates) {
    if (!is_abelian(G, S) || !is_normal(G, S)) continue;
    if (!is_cyclic(G, S) && r.hypothesis) {
      r.hypothesis = false;
      r.non_cyclic_witness = S;
    }
    r.normal_abelian.push_back(std::move(S));
  }
  r.group_cyclic = is_cyclic(G, whole_group(G));
  if (p != 2 && r.hypothesis && !r.group_cyclic) r.theorem_consistent = false;
  return r;
}

/// [N, G] <= N^p for a cyclic normal subgroup N.
inline Verdict cyclic_normal_commutator_check(const GroupHandle& G, const ElementSet& N) {
  if (!is_cyclic(G, N)) throw PreconditionError("N is not cyclic");
  if (!is_normal(G, N)) throw PreconditionError("N is not normal");
  Verdict v;
  v.predicate = "[N,G] <= N^p";
  const ElementSet NG = commutator_subgroup(G, N, whole_group(G));
  const ElementSet Np = agemo(G, 1, N);
  v.holds = NG.is_subset_of(Np);
  v.detail = "|[N,G]| = " + std::to_string(NG.size()) + ", |N^p| = " + std::to_string(Np.size());
  if (!v.holds) v.witness = {"element of [N,G] outside N^p", {*NG.first_outside(Np)}, NG};
  return v;
}

// ---- lifting independent sets -----------------------------------------------

/// Per-group data reused across many lift_independent_set calls.
struct LiftContext {
  int e = 0;
  /// power_map[b][x] = x^{p^b}.
  std::vector<std::vector<ElementId>> power_map;
  std::vector<ElementSet> power_images;
  ElementSet agemo1;
  FrattiniData frattini;
};

inline LiftContext make_lift_context(const GroupHandle& G) {
  if (!is_powerful(G).holds) throw PreconditionError("lift_independent_set requires a powerful group");
  LiftContext ctx;
  ctx.e = exponent_log(G);
  const auto p = static_cast<long long>(G.prime());
  ctx.power_map.resize(static_cast<std::size_t>(ctx.e) + 1);
  ctx.power_map[0].resize(G.size());
  for (std::size_t x = 0; x < G.size(); ++x) ctx.power_map[0][x] = static_cast<ElementId>(x);
  for (int b = 1; b <= ctx.e; ++b) {
    auto& cur = ctx.power_map[static_cast<std::size_t>(b)];
    const auto& prev = ctx.power_map[static_cast<std::size_t>(b) - 1];
    cur.resize(G.size());
    for (std::size_t x = 0; x < G.size(); ++x) cur[x] = G.power(prev[x], p);
  }
  for (int b = 0; b <= ctx.e; ++b)
    ctx.power_images.push_back(make_set(ctx.power_map[static_cast<std::size_t>(b)]));
  ctx.agemo1 = agemo(G, 1);
  ctx.frattini = frattini_and_rank(G);
  return ctx;
}

struct IndependenceCertificate {
  /// Minimal generators h_i of H, roots a_i and exponents b_i with
  /// a_i^{p^{b_i}} = h_i and a_i outside G^p.
  std::vector<ElementId> subgroup_generators;
  std::vector<ElementId> lifted;
  std::vector<int> root_exponent;
  int r = 0;
  int rank = 0;
  int d_group = 0;

  /// Re-checks every stored equation independently of how it was found.
  bool reverify(const GroupHandle& G) const {
    if (lifted.size() != static_cast<std::size_t>(r) || subgroup_generators.size() != lifted.size())
      return false;
    const ElementSet ag1 = agemo(G, 1);
    const FrattiniData F = frattini_and_rank(G);
    std::vector<FpVector> rows;
    for (std::size_t i = 0; i < lifted.size(); ++i) {
      const auto q = static_cast<long long>(ipow_u(static_cast<std::uint64_t>(G.prime()), root_exponent[i]));
      if (G.power(lifted[i], q) != subgroup_generators[i]) return false;
      if (ag1.contains(lifted[i])) return false;
      rows.push_back(coordinates_mod_frattini(G, lifted[i], F));
    }
    return rank_of(rows, G.prime()) == r && r <= F.rank;
  }
};

inline IndependenceCertificate lift_independent_set(const GroupHandle& G, const ElementSet& H,
                                                    const LiftContext& ctx) {
  IndependenceCertificate cert;
  const FrattiniData FH = frattini_and_rank(G, H);
  cert.r = FH.rank;
  cert.d_group = ctx.frattini.rank;
  cert.subgroup_generators = FH.basis;
  std::vector<FpVector> rows;
  for (ElementId h : FH.basis) {
    int b = ctx.e;
    while (b > 0 && !ctx.power_images[static_cast<std::size_t>(b)].contains(h)) --b;
    const auto& pm = ctx.power_map[static_cast<std::size_t>(b)];
    std::optional<ElementId> root;
    for (std::size_t x = 0; x < G.size(); ++x)
      if (pm[x] == h && !ctx.agemo1.contains(static_cast<ElementId>(x))) {
        root = static_cast<ElementId>(x);
        break;
      }
    if (!root)
      throw TheoremViolation("no p^" + std::to_string(b) + "-th root of " + G.label(h) +
                             " outside G^p");
    cert.lifted.push_back(*root);
    cert.root_exponent.push_back(b);
    rows.push_back(coordinates_mod_frattini(G, *root, ctx.frattini));
  }
  cert.rank = rank_of(rows, G.prime());
  if (cert.rank < cert.r)
    throw TheoremViolation("lifted elements have rank " + std::to_string(cert.rank) + " < d(H) = " +
                           std::to_string(cert.r));
  return cert;
}

inline IndependenceCertificate lift_independent_set(const GroupHandle& G, const ElementSet& H) {
  return lift_independent_set(G, H, make_lift_context(G));
}

struct RankSurvey {
  bool exhaustive = true;
  std::size_t subgroups = 0;
  int d_group = 0;
  int max_rank = 0;
  std::size_t violations = 0;
  /// Certificates produced and re-verified (when requested).
  std::size_t certificates = 0;
};

struct RankSurveyOptions {
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  bool certificates = false;
  /// Sample even when the group is small enough for the full lattice.
  bool force_sampling = false;
};

/// d(H) <= d(G) over all subgroups (|G| <= p^4) or `samples` sampled ones.
inline RankSurvey subgroup_rank_survey(const GroupHandle& G, const RankSurveyOptions& opts = {}) {
  const LiftContext ctx = make_lift_context(G);
  RankSurvey s;
  s.d_group = ctx.frattini.rank;
  const std::uint64_t limit = ipow_u(static_cast<std::uint64_t>(G.prime()), 4);
  SubgroupEnumeration subs =
      G.size() <= limit && !opts.force_sampling
          ? enumerate_subgroups(G, log_p(G.size(), G.prime()))
          : sample_subgroups(G, opts.samples, std::max(1, s.d_group + 1), opts.seed);
  s.exhaustive = subs.exhaustive;
  s.subgroups = subs.subgroups.size();
  for (const ElementSet& H : subs.subgroups) {
    const int dH = minimal_generators(G, H);
    s.max_rank = std::max(s.max_rank, dH);
    if (dH > s.d_group) ++s.violations;
    if (opts.certificates) {
      const IndependenceCertificate c = lift_independent_set(G, H, ctx);
      if (c.r != dH || !c.reverify(G)) ++s.violations;
      ++s.certificates;
    }
  }
  return s;
}

}  // namespace pgroup
