#pragma once

// Subgroup-theoretic machinery over a GroupHandle: power and omega subgroups,
// commutator series, exponent, Frattini subgroup and rank, coordinates modulo
// the Frattini subgroup, and bounded subgroup enumeration.
//
// Most operations take an optional ambient subgroup A (default: the whole
// group) so the same code computes e.g. the Frattini subgroup of H <= G
// without building a table for H.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pgroup/group_handle.hpp"
#include "pgroup/linalg.hpp"

namespace pgroup {

inline std::vector<ElementId> generators_of(const ElementSet& s) {
  return s.generators.empty() ? s.members : s.generators;
}

inline std::uint64_t ipow_u(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// log_p(v) for v a power of p.
inline int log_p(std::uint64_t v, int p) {
  int k = 0;
  while (v > 1) {
    v /= static_cast<std::uint64_t>(p);
    ++k;
  }
  return k;
}

// ---- power subgroups --------------------------------------------------------

/// {a^{p^i} : a in A}, not closed.
inline ElementSet power_image(const GroupHandle& G, int i, const ElementSet& A) {
  const auto k = static_cast<long long>(ipow_u(static_cast<std::uint64_t>(G.prime()), i));
  std::vector<ElementId> out;
  out.reserve(A.size());
  for (ElementId a : A.members) out.push_back(G.power(a, k));
  return make_set(std::move(out));
}

inline ElementSet power_image(const GroupHandle& G, int i) {
  return G.memo("power_image/" + std::to_string(i),
                [&] { return power_image(G, i, whole_group(G)); });
}

/// Agemo: the subgroup generated by p^i-th powers of A.
inline ElementSet agemo(const GroupHandle& G, int i, const ElementSet& A) {
  if (i == 0) return A;
  const ElementSet img = power_image(G, i, A);
  return closure(G, std::span<const ElementId>(img.members));
}

inline ElementSet agemo(const GroupHandle& G, int i) {
  if (i == 0) return whole_group(G);
  return G.memo("agemo/" + std::to_string(i), [&] {
    const ElementSet img = power_image(G, i);
    return closure(G, std::span<const ElementId>(img.members));
  });
}

// ---- omega subgroups --------------------------------------------------------

/// {g : o(g) <= p^i}.
inline ElementSet low_order_set(const GroupHandle& G, int i) {
  return G.memo("low_order/" + std::to_string(i), [&] {
    const std::uint64_t bound = ipow_u(static_cast<std::uint64_t>(G.prime()), i);
    std::vector<ElementId> out;
    const auto& ord = G.orders();
    for (std::size_t a = 0; a < G.size(); ++a)
      if (ord[a] <= bound) out.push_back(static_cast<ElementId>(a));
    return ElementSet{std::move(out), {}};
  });
}

/// Omega_i: the subgroup generated by elements of order <= p^i.
inline ElementSet omega(const GroupHandle& G, int i) {
  return G.memo("omega/" + std::to_string(i), [&] {
    const ElementSet low = low_order_set(G, i);
    return closure(G, std::span<const ElementId>(low.members));
  });
}

// ---- commutator calculus ----------------------------------------------------

/// [A, B]: normal closure in <A, B> of the commutators of generators.
inline ElementSet commutator_subgroup(const GroupHandle& G, const ElementSet& A,
                                      const ElementSet& B) {
  const auto ga = generators_of(A);
  const auto gb = generators_of(B);
  std::vector<ElementId> comms;
  for (ElementId a : ga)
    for (ElementId b : gb) comms.push_back(G.commutator(a, b));
  std::vector<ElementId> conj = ga;
  conj.insert(conj.end(), gb.begin(), gb.end());
  return normal_closure(G, std::span<const ElementId>(comms), std::span<const ElementId>(conj));
}

inline ElementSet derived_subgroup(const GroupHandle& G, const ElementSet& A) {
  return commutator_subgroup(G, A, A);
}

inline ElementSet derived_subgroup(const GroupHandle& G) {
  return G.memo("derived", [&] {
    const ElementSet W = whole_group(G);
    return commutator_subgroup(G, W, W);
  });
}

/// Elements commuting with every generator of G.
inline ElementSet center(const GroupHandle& G) {
  return G.memo("center", [&] {
    std::vector<ElementId> out;
    const auto& gens = G.generators();
    for (std::size_t a = 0; a < G.size(); ++a) {
      const auto z = static_cast<ElementId>(a);
      bool central = true;
      for (ElementId g : gens)
        if (G.mul(z, g) != G.mul(g, z)) {
          central = false;
          break;
        }
      if (central) out.push_back(z);
    }
    ElementSet all{out, {}};
    return closure(G, std::span<const ElementId>(all.members));
  });
}

enum class SeriesKind { LowerCentral, UpperCentral, Derived };

inline std::string to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::LowerCentral:
      return "lower-central";
    case SeriesKind::UpperCentral:
      return "upper-central";
    case SeriesKind::Derived:
      return "derived";
  }
  return "?";
}

struct SeriesReport {
  SeriesKind kind = SeriesKind::LowerCentral;
  std::vector<ElementSet> terms;
  /// Nilpotency class for central series, derived length for the derived series.
  int class_or_length = 0;
};

/// gamma_1 = A, gamma_{k+1} = [gamma_k, A], down to the trivial subgroup.
inline SeriesReport lower_central_series(const GroupHandle& G, const ElementSet& A) {
  SeriesReport r;
  r.kind = SeriesKind::LowerCentral;
  r.terms.push_back(A);
  while (r.terms.back().size() > 1) {
    ElementSet next = commutator_subgroup(G, r.terms.back(), A);
    if (next.size() == r.terms.back().size()) break;  // not nilpotent; cannot happen for p-groups
    r.terms.push_back(std::move(next));
  }
  r.class_or_length = static_cast<int>(r.terms.size()) - 1;
  return r;
}

inline SeriesReport lower_central_series(const GroupHandle& G) {
  return lower_central_series(G, whole_group(G));
}

/// Z_0 = 1, Z_{i+1} = {z : [z, g] in Z_i for every generator g}.
inline SeriesReport upper_central_series(const GroupHandle& G) {
  SeriesReport r;
  r.kind = SeriesKind::UpperCentral;
  r.terms.push_back(trivial_subgroup());
  const auto& gens = G.generators();
  while (r.terms.back().size() < G.size()) {
    const ElementSet& Z = r.terms.back();
    std::vector<ElementId> next;
    for (std::size_t a = 0; a < G.size(); ++a) {
      const auto z = static_cast<ElementId>(a);
      bool ok = true;
      for (ElementId g : gens)
        if (!Z.contains(G.commutator(z, g))) {
          ok = false;
          break;
        }
      if (ok) next.push_back(z);
    }
    ElementSet Zn = closure(G, std::span<const ElementId>(next));
    if (Zn.size() == Z.size()) break;
    r.terms.push_back(std::move(Zn));
  }
  r.class_or_length = static_cast<int>(r.terms.size()) - 1;
  return r;
}

inline SeriesReport derived_series(const GroupHandle& G) {
  SeriesReport r;
  r.kind = SeriesKind::Derived;
  r.terms.push_back(whole_group(G));
  while (r.terms.back().size() > 1) {
    ElementSet next = derived_subgroup(G, r.terms.back());
    if (next.size() == r.terms.back().size()) break;
    r.terms.push_back(std::move(next));
  }
  r.class_or_length = static_cast<int>(r.terms.size()) - 1;
  return r;
}

inline int nilpotency_class(const GroupHandle& G) { return lower_central_series(G).class_or_length; }

/// Maximum element order.
inline std::uint64_t exponent(const GroupHandle& G) {
  const auto& ord = G.orders();
  return ord.empty() ? 1 : *std::max_element(ord.begin(), ord.end());
}

inline std::uint64_t exponent(const GroupHandle& G, const ElementSet& A) {
  std::uint64_t m = 1;
  for (ElementId a : A.members) m = std::max(m, G.order_of(a));
  return m;
}

/// log_p of the exponent.
inline int exponent_log(const GroupHandle& G) { return log_p(exponent(G), G.prime()); }

inline bool is_abelian(const GroupHandle& G, const ElementSet& A) {
  const auto gens = generators_of(A);
  for (std::size_t x = 0; x < gens.size(); ++x)
    for (std::size_t y = x + 1; y < gens.size(); ++y)
      if (G.mul(gens[x], gens[y]) != G.mul(gens[y], gens[x])) return false;
  return true;
}

inline bool is_cyclic(const GroupHandle& G, const ElementSet& A) {
  return exponent(G, A) == A.size();
}

// ---- Frattini subgroup and minimal generation -------------------------------

struct FrattiniData {
  ElementSet ambient;
  ElementSet frattini;
  int rank = 0;
  /// Elements whose images form a basis of A / Phi(A), chosen greedily in id order.
  std::vector<ElementId> basis;
  /// coordinate_index[x] = index (base p, basis[0] most significant) of the
  /// coset of x, or -1 when x lies outside the ambient subgroup.
  std::vector<std::int64_t> coordinate_index;
};

/// Phi(A) = A^p [A, A]; rank d = log_p |A : Phi(A)|.
inline FrattiniData frattini_and_rank(const GroupHandle& G, const ElementSet& A) {
  FrattiniData F;
  F.ambient = A;
  F.frattini = join(G, agemo(G, 1, A), derived_subgroup(G, A));
  F.rank = log_p(A.size() / F.frattini.size(), G.prime());
  ClosureBuilder<GroupHandle> span_builder(G, F.frattini);
  for (ElementId x : A.members) {
    if (span_builder.size() == A.size()) break;
    if (!span_builder.contains(x)) {
      F.basis.push_back(x);
      span_builder.add(x);
    }
  }
  // Label every coset by its coordinates.
  const int p = G.prime();
  F.coordinate_index.assign(G.size(), -1);
  const std::uint64_t cosets = ipow_u(static_cast<std::uint64_t>(p), F.rank);
  for (std::uint64_t idx = 0; idx < cosets; ++idx) {
    ElementId rep = 0;
    std::uint64_t rest = idx;
    std::vector<int> digits(static_cast<std::size_t>(F.rank));
    for (int k = F.rank - 1; k >= 0; --k) {
      digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::uint64_t>(p));
      rest /= static_cast<std::uint64_t>(p);
    }
    for (int k = 0; k < F.rank; ++k)
      rep = G.mul(rep, G.power(F.basis[static_cast<std::size_t>(k)], digits[static_cast<std::size_t>(k)]));
    for (ElementId f : F.frattini.members) F.coordinate_index[G.mul(rep, f)] = static_cast<std::int64_t>(idx);
  }
  return F;
}

inline FrattiniData frattini_and_rank(const GroupHandle& G) {
  return frattini_and_rank(G, whole_group(G));
}

/// Image of x in A / Phi(A) in the coordinates of F.basis.
inline FpVector coordinates_mod_frattini(const GroupHandle& G, ElementId x, const FrattiniData& F) {
  const std::int64_t idx = F.coordinate_index.at(x);
  if (idx < 0) throw std::logic_error("element lies outside the ambient subgroup");
  FpVector v(static_cast<std::size_t>(F.rank));
  auto rest = static_cast<std::uint64_t>(idx);
  for (int k = F.rank - 1; k >= 0; --k) {
    v[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::uint64_t>(G.prime()));
    rest /= static_cast<std::uint64_t>(G.prime());
  }
  return v;
}

/// Minimal number of generators of A.
inline int minimal_generators(const GroupHandle& G, const ElementSet& A) {
  const ElementSet phi = join(G, agemo(G, 1, A), derived_subgroup(G, A));
  return log_p(A.size() / phi.size(), G.prime());
}

// ---- subgroup enumeration ---------------------------------------------------

struct SubgroupEnumeration {
  std::vector<ElementSet> subgroups;
  bool exhaustive = true;
};

/// Every subgroup needing at most max_gens generators, found by adjoining one
/// element at a time to already-found subgroups and deduplicating by member set.
inline SubgroupEnumeration enumerate_subgroups(const GroupHandle& G, int max_gens,
                                               std::uint64_t order_limit = 0) {
  if (order_limit != 0 && G.size() > order_limit)
    throw CapExceeded("exhaustive subgroup enumeration limited to order " +
                      std::to_string(order_limit));
  SubgroupEnumeration out;
  std::set<std::vector<ElementId>> seen;
  std::vector<ElementSet> frontier{trivial_subgroup()};
  seen.insert(frontier.front().members);
  out.subgroups.push_back(frontier.front());
  for (int depth = 0; depth < max_gens && !frontier.empty(); ++depth) {
    std::vector<ElementSet> next;
    for (const ElementSet& S : frontier) {
      std::vector<char> covered(G.size(), 0);
      for (ElementId m : S.members) covered[m] = 1;
      for (std::size_t a = 0; a < G.size(); ++a) {
        if (covered[a]) continue;
        ClosureBuilder<GroupHandle> b(G, S);
        const auto x = static_cast<ElementId>(a);
        b.add(x);
        ElementSet T = b.result();
        // <S, x^k s> = <S, x> for s in S and k prime to p.
        const std::uint64_t ox = G.order_of(x);
        for (std::uint64_t k = 1; k < ox; ++k) {
          if (k % static_cast<std::uint64_t>(G.prime()) == 0) continue;
          const ElementId xk = G.power(x, static_cast<long long>(k));
          for (ElementId m : S.members) covered[G.mul(xk, m)] = 1;
        }
        if (seen.insert(T.members).second) {
          next.push_back(T);
          out.subgroups.push_back(std::move(T));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.subgroups.begin(), out.subgroups.end(), [](const ElementSet& x, const ElementSet& y) {
    return x.size() != y.size() ? x.size() < y.size() : x.members < y.members;
  });
  return out;
}

/// `count` subgroups closed from random generator subsets of size 1..max_gens.
/// Draws are kept in order (repeats included) for reproducible surveys.
inline SubgroupEnumeration sample_subgroups(const GroupHandle& G, std::size_t count, int max_gens,
                                            std::uint64_t seed) {
  SubgroupEnumeration out;
  out.exhaustive = false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(G.size() - 1));
  std::uniform_int_distribution<int> ngens(1, std::max(1, max_gens));
  for (std::size_t t = 0; t < count; ++t) {
    const int k = ngens(rng);
    std::vector<ElementId> gens;
    for (int j = 0; j < k; ++j) gens.push_back(pick(rng));
    out.subgroups.push_back(closure(G, std::span<const ElementId>(gens)));
  }
  return out;
}

}  // namespace pgroup
