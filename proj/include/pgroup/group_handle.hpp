#pragma once

// GroupHandle: one ambient group, backed either by collection over a
// presentation (streaming, nothing materialised beyond per-element caches) or
// by a TableGroup. Both backends share element ids, so results from the two
// can be compared element for element.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "pgroup/collector.hpp"
#include "pgroup/table_group.hpp"

namespace pgroup {

struct Caps {
  std::uint64_t stream = 19683;
  std::uint64_t table = 6561;
};

class GroupHandle {
 public:
  GroupHandle() = default;

  static GroupHandle from_presentation(std::shared_ptr<const PcGroup> G, Caps caps = {}) {
    if (G->order() > caps.stream)
      throw CapExceeded("group order " + std::to_string(G->order()) +
                        " exceeds streaming cap " + std::to_string(caps.stream));
    GroupHandle h;
    auto b = std::make_shared<PcBackend>();
    b->group = std::move(G);
    b->n = static_cast<std::size_t>(b->group->order());
    h.name_ = b->group->presentation().name;
    for (int i = 0; i < b->group->ngens(); ++i) {
      Exponents e = b->group->presentation().zero();
      e[static_cast<std::size_t>(i)] = 1;
      h.generators_.push_back(static_cast<ElementId>(b->group->encode(e)));
    }
    h.pc_ = std::move(b);
    h.state_ = std::make_shared<State>();
    return h;
  }

  static GroupHandle from_table(std::shared_ptr<const TableGroup> T) {
    GroupHandle h;
    h.name_ = T->name();
    h.generators_ = T->generators();
    h.table_ = std::move(T);
    h.state_ = std::make_shared<State>();
    return h;
  }

  /// Table-backed view of the same presentation (ids agree with from_presentation).
  static GroupHandle table_of(const PcGroup& G, const TableOptions& opts = {}) {
    return from_table(std::make_shared<const TableGroup>(build_table(G, opts)));
  }

  bool table_backed() const { return table_ != nullptr; }
  const TableGroup* table() const { return table_.get(); }
  const PcGroup* presentation_group() const { return pc_ ? pc_->group.get() : nullptr; }
  std::shared_ptr<const PcGroup> presentation_ptr() const { return pc_ ? pc_->group : nullptr; }

  std::size_t size() const { return table_ ? table_->size() : pc_->n; }
  int prime() const { return table_ ? table_->prime() : pc_->group->prime(); }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const std::vector<ElementId>& generators() const { return generators_; }

  ElementId mul(ElementId a, ElementId b) const {
    if (table_) return table_->mul(a, b);
    const PcGroup& G = *pc_->group;
    return static_cast<ElementId>(G.encode(G.mul(G.decode(a), G.decode(b))));
  }
  ElementId inv(ElementId a) const {
    if (table_) return table_->inv(a);
    return pc_inverses()[a];
  }
  ElementId power(ElementId a, long long k) const {
    if (table_) return group_power(*table_, a, k);
    const PcGroup& G = *pc_->group;
    return static_cast<ElementId>(G.encode(G.pow(G.decode(a), k)));
  }
  ElementId commutator(ElementId a, ElementId b) const { return group_commutator(*this, a, b); }

  std::uint64_t order_of(ElementId a) const {
    if (table_) return table_->order_of(a);
    return pc_orders()[a];
  }
  const std::vector<std::uint64_t>& orders() const {
    return table_ ? table_->orders() : pc_orders();
  }

  std::string label(ElementId a) const {
    if (table_) return table_->label(a);
    return format_word(pc_->group->decode(a));
  }

  /// Compute-once cache for derived subgroups keyed by a short string. The
  /// first finished computation wins; later ones are discarded, so every
  /// caller observes the same value.
  template <class F>
  ElementSet memo(const std::string& key, F&& compute) const {
    {
      std::lock_guard<std::mutex> lock(state_->mu);
      if (auto it = state_->cache.find(key); it != state_->cache.end()) return it->second;
    }
    ElementSet value = compute();
    std::lock_guard<std::mutex> lock(state_->mu);
    return state_->cache.emplace(key, std::move(value)).first->second;
  }

 private:
  struct PcBackend {
    std::shared_ptr<const PcGroup> group;
    std::size_t n = 0;
    mutable std::once_flag orders_once;
    mutable std::vector<std::uint64_t> orders;
    mutable std::once_flag inverses_once;
    mutable std::vector<ElementId> inverses;
  };
  struct State {
    std::mutex mu;
    std::map<std::string, ElementSet> cache;
  };

  const std::vector<std::uint64_t>& pc_orders() const {
    std::call_once(pc_->orders_once, [b = pc_.get()] {
      b->orders.resize(b->n);
      for (std::size_t a = 0; a < b->n; ++a)
        b->orders[a] = static_cast<std::uint64_t>(b->group->order_of(b->group->decode(a)));
    });
    return pc_->orders;
  }
  const std::vector<ElementId>& pc_inverses() const {
    std::call_once(pc_->inverses_once, [b = pc_.get()] {
      b->inverses.resize(b->n);
      for (std::size_t a = 0; a < b->n; ++a)
        b->inverses[a] = static_cast<ElementId>(b->group->encode(b->group->inv(b->group->decode(a))));
    });
    return pc_->inverses;
  }

  std::shared_ptr<const PcBackend> pc_;
  std::shared_ptr<const TableGroup> table_;
  std::shared_ptr<State> state_;
  std::string name_;
  std::vector<ElementId> generators_;
};

/// The whole group as an ElementSet, generated by the handle's generators.
inline ElementSet whole_group(const GroupHandle& G) {
  ElementSet s;
  s.members.resize(G.size());
  for (std::size_t a = 0; a < G.size(); ++a) s.members[a] = static_cast<ElementId>(a);
  s.generators = G.generators();
  return s;
}

inline ElementSet trivial_subgroup() { return ElementSet{{0}, {}}; }

/// Table handle for a subgroup, relabelled 0..|S|-1 in member order.
struct SubgroupTable {
  GroupHandle handle;
  std::vector<ElementId> to_parent;
};

inline SubgroupTable subgroup_table(const GroupHandle& G, const ElementSet& S) {
  const std::size_t k = S.size();
  std::vector<ElementId> index(G.size(), UINT32_MAX);
  for (std::size_t a = 0; a < k; ++a) index[S.members[a]] = static_cast<ElementId>(a);
  std::vector<ElementId> mul(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const ElementId c = index[G.mul(S.members[a], S.members[b])];
      if (c == UINT32_MAX) throw PreconditionError("set is not a subgroup");
      mul[a * k + b] = c;
    }
  std::vector<std::string> labels(k);
  for (std::size_t a = 0; a < k; ++a) labels[a] = G.label(S.members[a]);
  std::vector<ElementId> gens;
  for (ElementId g : S.generators) gens.push_back(index[g]);
  TableOptions opts;
  opts.cap = UINT64_MAX;
  auto T = std::make_shared<const TableGroup>(TableGroup::from_cayley(
      G.prime(), k, std::move(mul), std::move(labels), std::move(gens), G.name() + "-sub", opts));
  return SubgroupTable{GroupHandle::from_table(std::move(T)), S.members};
}

/// Quotient of a handle by a normal subgroup, as a table handle.
struct QuotientHandle {
  GroupHandle handle;
  std::vector<ElementId> representative;
  std::vector<ElementId> coset_of;
};

inline QuotientHandle quotient_handle(const GroupHandle& G, const ElementSet& N) {
  std::vector<std::string> labels(G.size());
  for (std::size_t a = 0; a < G.size(); ++a) labels[a] = G.label(static_cast<ElementId>(a));
  QuotientGroup q = quotient_table(G, N, G.prime(), G.generators(), &labels);
  QuotientHandle out;
  out.handle = GroupHandle::from_table(std::make_shared<const TableGroup>(std::move(q.group)));
  out.handle.set_name(G.name() + "/N");
  out.representative = std::move(q.representative);
  out.coset_of = std::move(q.coset_of);
  return out;
}

}  // namespace pgroup
