#pragma once

// Explicit multiplication tables, the brute-force oracle for everything the
// collector computes, and the subgroup algorithms shared by every backend.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pgroup/collector.hpp"
#include "pgroup/error.hpp"

namespace pgroup {

using ElementId = std::uint32_t;

/// Anything with ids 0..size()-1, identity 0, and total mul/inv.
template <class G>
concept FiniteGroup = requires(const G& g, ElementId a) {
  { g.size() } -> std::convertible_to<std::size_t>;
  { g.mul(a, a) } -> std::convertible_to<ElementId>;
  { g.inv(a) } -> std::convertible_to<ElementId>;
};

/// Sorted, deduplicated member ids plus the generators the set was closed from.
struct ElementSet {
  std::vector<ElementId> members;
  std::vector<ElementId> generators;

  std::size_t size() const { return members.size(); }
  bool contains(ElementId x) const {
    return std::binary_search(members.begin(), members.end(), x);
  }
  bool is_subset_of(const ElementSet& other) const {
    return std::includes(other.members.begin(), other.members.end(), members.begin(),
                         members.end());
  }
  /// First member not in `other`, if any.
  std::optional<ElementId> first_outside(const ElementSet& other) const {
    for (ElementId x : members)
      if (!other.contains(x)) return x;
    return std::nullopt;
  }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.members == b.members;
  }
};

using Subgroup = ElementSet;

inline ElementSet make_set(std::vector<ElementId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ElementSet{std::move(ids), {}};
}

template <FiniteGroup G>
ElementId group_power(const G& g, ElementId x, long long k) {
  if (k < 0) {
    x = g.inv(x);
    k = -k;
  }
  ElementId result = 0;
  ElementId base = x;
  while (k > 0) {
    if (k & 1) result = g.mul(result, base);
    k >>= 1;
    if (k > 0) base = g.mul(base, base);
  }
  return result;
}

template <FiniteGroup G>
ElementId group_commutator(const G& g, ElementId x, ElementId y) {
  return g.mul(g.inv(g.mul(y, x)), g.mul(x, y));
}

/// Subgroup closure that keeps an irredundant generator list.
template <FiniteGroup G>
class ClosureBuilder {
 public:
  explicit ClosureBuilder(const G& g) : g_(&g), mark_(g.size(), 0) {
    list_.push_back(0);
    mark_[0] = 1;
  }
  ClosureBuilder(const G& g, const ElementSet& start) : ClosureBuilder(g) {
    for (ElementId x : start.generators) add(x);
    for (ElementId x : start.members)
      if (!mark_[x]) add(x);
  }

  bool contains(ElementId x) const { return mark_[x] != 0; }
  std::size_t size() const { return list_.size(); }

  /// Adds x as a generator; returns false if it was already inside.
  bool add(ElementId x) {
    if (mark_[x]) return false;
    gens_.push_back(x);
    const std::size_t old = list_.size();
    // Old members are closed under the old generators; they only need x.
    for (std::size_t k = 0; k < list_.size(); ++k) {
      if (k < old) {
        push(g_->mul(list_[k], x));
      } else {
        for (ElementId a : gens_) push(g_->mul(list_[k], a));
      }
    }
    return true;
  }

  ElementSet result() const {
    ElementSet s;
    s.members = list_;
    std::sort(s.members.begin(), s.members.end());
    s.generators = gens_;
    return s;
  }

 private:
  void push(ElementId y) {
    if (!mark_[y]) {
      mark_[y] = 1;
      list_.push_back(y);
    }
  }

  const G* g_;
  std::vector<char> mark_;
  std::vector<ElementId> list_;
  std::vector<ElementId> gens_;
};

/// Least subgroup containing gens (breadth-first, right multiplication).
template <FiniteGroup G>
ElementSet closure(const G& g, std::span<const ElementId> gens) {
  ClosureBuilder<G> b(g);
  for (ElementId x : gens) {
    if (x >= g.size()) throw std::out_of_range("element id out of range");
    b.add(x);
  }
  return b.result();
}

template <FiniteGroup G>
ElementSet closure(const G& g, std::initializer_list<ElementId> gens) {
  return closure(g, std::span<const ElementId>(gens.begin(), gens.size()));
}

/// Smallest subgroup containing `gens` and normalised by every conjugator.
template <FiniteGroup G>
ElementSet normal_closure(const G& g, std::span<const ElementId> gens,
                          std::span<const ElementId> conjugators) {
  ClosureBuilder<G> b(g);
  for (ElementId x : gens) b.add(x);
  // A subgroup is normalised by c iff c conjugates each of its generators inside.
  bool changed = true;
  while (changed) {
    changed = false;
    const auto current = b.result().generators;
    for (ElementId s : current) {
      for (ElementId c : conjugators) {
        const ElementId t = g.mul(g.mul(g.inv(c), s), c);
        if (b.add(t)) changed = true;
      }
    }
  }
  return b.result();
}

/// Product N M of two subgroups, at least one of them normal.
template <FiniteGroup G>
ElementSet join(const G& g, const ElementSet& a, const ElementSet& b) {
  ClosureBuilder<G> cb(g, a);
  for (ElementId x : b.generators) cb.add(x);
  for (ElementId x : b.members) cb.add(x);
  return cb.result();
}

template <FiniteGroup G>
bool is_closed(const G& g, const ElementSet& s) {
  if (!s.contains(0)) return false;
  for (ElementId x : s.members)
    for (ElementId y : s.members)
      if (!s.contains(g.mul(x, y))) return false;
  return true;
}

/// True iff x s x^{-1} lies in S for every x in the group and s in S.
template <FiniteGroup G>
bool is_normal(const G& g, const ElementSet& s) {
  const std::vector<ElementId>& test = s.generators.empty() ? s.members : s.generators;
  for (ElementId x = 0; x < g.size(); ++x) {
    const ElementId xi = g.inv(x);
    for (ElementId y : test)
      if (!s.contains(g.mul(g.mul(x, y), xi))) return false;
  }
  return true;
}

/// Exhaustive normality check by all conjugations of all members, independent
/// of the generator list.
template <FiniteGroup G>
bool is_normal_exhaustive(const G& g, const ElementSet& s) {
  if (!is_closed(g, s)) throw PreconditionError("set is not closed under multiplication");
  for (ElementId x = 0; x < g.size(); ++x) {
    const ElementId xi = g.inv(x);
    for (ElementId y : s.members)
      if (!s.contains(g.mul(g.mul(x, y), xi))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

struct TableOptions {
  std::uint64_t cap = 6561;
  /// Full triple check up to this order; generator (Light) test plus sampled
  /// triples above.
  std::size_t exhaustive_assoc_limit = 729;
  std::size_t sampled_triples = 1'000'000;
  std::uint64_t seed = 0;
};

class TableGroup {
 public:
  TableGroup() = default;

  /// Builds from a row-major Cayley table with identity at id 0. Verifies
  /// identity, inverses and associativity; throws PresentationError otherwise.
  static TableGroup from_cayley(int prime, std::size_t order, std::vector<ElementId> mul,
                                std::vector<std::string> labels,
                                std::vector<ElementId> generators, std::string name,
                                const TableOptions& opts = {});

  std::size_t size() const { return n_; }
  int prime() const { return prime_; }
  ElementId mul(ElementId a, ElementId b) const { return mul_[std::size_t{a} * n_ + b]; }
  ElementId inv(ElementId a) const { return inv_[a]; }
  std::uint64_t order_of(ElementId a) const { return orders_[a]; }
  const std::vector<std::uint64_t>& orders() const { return orders_; }
  const std::vector<ElementId>& generators() const { return generators_; }
  const std::string& name() const { return name_; }
  const std::vector<ElementId>& raw_table() const { return mul_; }
  /// Normal-word label when built from a presentation, else a handwritten name.
  std::string label(ElementId a) const {
    return a < labels_.size() ? labels_[a] : "#" + std::to_string(a);
  }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Exhaustive (or sampled, by opts) associativity check.
  bool verify_associative(const TableOptions& opts = {}) const;

  /// CSV dump: one row per line, comma separated, row-major.
  std::string to_csv() const {
    std::string out;
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        if (b) out += ',';
        out += std::to_string(mul_[a * n_ + b]);
      }
      out += '\n';
    }
    return out;
  }

 private:
  int prime_ = 2;
  std::size_t n_ = 0;
  std::vector<ElementId> mul_;
  std::vector<ElementId> inv_;
  std::vector<std::uint64_t> orders_;
  std::vector<std::string> labels_;
  std::vector<ElementId> generators_;
  std::string name_;
};

inline bool TableGroup::verify_associative(const TableOptions& opts) const {
  const std::size_t N = n_;
  if (N <= opts.exhaustive_assoc_limit) {
    for (ElementId a = 0; a < N; ++a)
      for (ElementId b = 0; b < N; ++b) {
        const ElementId ab = mul(a, b);
        for (ElementId c = 0; c < N; ++c)
          if (mul(ab, c) != mul(a, mul(b, c))) return false;
      }
    return true;
  }
  // Light's test: (xy)g = x(yg) for g in a generating set.
  for (ElementId g : generators_)
    for (ElementId a = 0; a < N; ++a)
      for (ElementId b = 0; b < N; ++b)
        if (mul(mul(a, b), g) != mul(a, mul(b, g))) return false;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(N - 1));
  for (std::size_t t = 0; t < opts.sampled_triples; ++t) {
    const ElementId a = pick(rng), b = pick(rng), c = pick(rng);
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
  }
  return true;
}

inline TableGroup TableGroup::from_cayley(int prime, std::size_t order, std::vector<ElementId> mul,
                                          std::vector<std::string> labels,
                                          std::vector<ElementId> generators, std::string name,
                                          const TableOptions& opts) {
  if (mul.size() != order * order) throw PresentationError("table has wrong size");
  TableGroup t;
  t.prime_ = prime;
  t.n_ = order;
  t.mul_ = std::move(mul);
  t.labels_ = std::move(labels);
  t.generators_ = std::move(generators);
  t.name_ = std::move(name);
  for (ElementId a = 0; a < order; ++a) {
    if (t.mul(0, a) != a || t.mul(a, 0) != a)
      throw PresentationError("id 0 is not a two-sided identity");
  }
  t.inv_.assign(order, 0);
  std::vector<char> found(order, 0);
  for (ElementId a = 0; a < order; ++a)
    for (ElementId b = 0; b < order; ++b)
      if (t.mul(a, b) == 0) {
        if (t.mul(b, a) != 0) throw PresentationError("inverse is not two-sided");
        t.inv_[a] = b;
        found[a] = 1;
        break;
      }
  if (std::find(found.begin(), found.end(), 0) != found.end())
    throw PresentationError("element without inverse");
  if (!t.verify_associative(opts)) throw PresentationError("table is not associative");
  // Orders by repeated multiplication, independent of the collector.
  t.orders_.assign(order, 0);
  for (ElementId a = 0; a < order; ++a) {
    std::uint64_t k = 1;
    ElementId x = a;
    while (x != 0) {
      x = t.mul(x, a);
      ++k;
    }
    t.orders_[a] = k;
  }
  if (t.generators_.empty()) {
    ClosureBuilder<TableGroup> b(t);
    for (ElementId a = 1; a < order; ++a) b.add(a);
    t.generators_ = b.result().generators;
  }
  return t;
}

/// Multiplication table of a consistent presentation, ids in lexicographic
/// enumeration order. Entries come from collection over all pairs.
inline TableGroup build_table(const PcGroup& G, const TableOptions& opts = {}) {
  const std::uint64_t N = G.order();
  if (N > opts.cap)
    throw CapExceeded("group order " + std::to_string(N) + " exceeds table cap " +
                      std::to_string(opts.cap));
  const auto n = static_cast<std::size_t>(N);
  std::vector<Exponents> words(n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    words[a] = G.decode(a);
    labels[a] = format_word(words[a]);
  }
  std::vector<ElementId> mul(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      mul[a * n + b] = static_cast<ElementId>(G.encode(G.mul(words[a], words[b])));
  std::vector<ElementId> gens;
  for (int i = 0; i < G.ngens(); ++i) {
    Exponents e = G.presentation().zero();
    e[static_cast<std::size_t>(i)] = 1;
    gens.push_back(static_cast<ElementId>(G.encode(e)));
  }
  try {
    return TableGroup::from_cayley(G.prime(), n, std::move(mul), std::move(labels),
                                   std::move(gens), G.presentation().name, opts);
  } catch (const PresentationError& e) {
    throw PresentationError(std::string("inconsistent presentation: ") + e.what());
  }
}

/// Coset group G/N; cosets are keyed by their minimum element id.
struct QuotientGroup {
  TableGroup group;
  /// representative[c] is the minimum id of coset c.
  std::vector<ElementId> representative;
  /// coset_of[x] is the coset id containing x.
  std::vector<ElementId> coset_of;
};

template <FiniteGroup G>
QuotientGroup quotient_table(const G& g, const ElementSet& N, int prime,
                             std::span<const ElementId> parent_generators,
                             const std::vector<std::string>* parent_labels = nullptr) {
  if (!is_normal(g, N)) throw PreconditionError("quotient by a subgroup that is not normal");
  const std::size_t n = g.size();
  QuotientGroup q;
  q.coset_of.assign(n, UINT32_MAX);
  for (ElementId x = 0; x < n; ++x) {
    if (q.coset_of[x] != UINT32_MAX) continue;
    const auto c = static_cast<ElementId>(q.representative.size());
    q.representative.push_back(x);
    for (ElementId m : N.members) q.coset_of[g.mul(x, m)] = c;
  }
  const std::size_t k = q.representative.size();
  std::vector<ElementId> mul(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      mul[a * k + b] = q.coset_of[g.mul(q.representative[a], q.representative[b])];
  std::vector<std::string> labels(k);
  for (std::size_t a = 0; a < k; ++a)
    labels[a] = (parent_labels ? (*parent_labels)[q.representative[a]]
                               : "#" + std::to_string(q.representative[a])) +
                "*N";
  std::vector<ElementId> gens;
  for (ElementId x : parent_generators) {
    const ElementId c = q.coset_of[x];
    if (c != 0 && std::find(gens.begin(), gens.end(), c) == gens.end()) gens.push_back(c);
  }
  TableOptions opts;
  opts.cap = UINT64_MAX;
  q.group = TableGroup::from_cayley(prime, k, std::move(mul), std::move(labels), std::move(gens),
                                    "quotient", opts);
  return q;
}

inline QuotientGroup quotient_table(const TableGroup& g, const ElementSet& N) {
  return quotient_table(g, N, g.prime(), g.generators(), &g.labels());
}

}  // namespace pgroup
