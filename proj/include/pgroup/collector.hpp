#pragma once

// Collection from the left for refined power-commutator presentations, plus
// element arithmetic, orders, enumeration and the consistency test words.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pgroup/error.hpp"
#include "pgroup/pc_presentation.hpp"

namespace pgroup {

/// One factor g_gen^exp of an input word. Exponents may be negative.
struct Letter {
  int gen = 0;
  long long exp = 1;
};

struct CollectionStats {
  std::uint64_t steps = 0;
  std::size_t max_stack_depth = 0;

  CollectionStats& operator+=(const CollectionStats& o) {
    steps += o.steps;
    max_stack_depth = std::max(max_stack_depth, o.max_stack_depth);
    return *this;
  }
};

struct CollectOptions {
  std::uint64_t step_budget = 10'000'000;
};

class PcGroup;

/// A normal word bound to the collector of its presentation.
class Element {
 public:
  Element() = default;
  Element(std::shared_ptr<const PcGroup> group, Exponents exps)
      : group_(std::move(group)), exps_(std::move(exps)) {}

  const Exponents& exponents() const { return exps_; }
  const PcGroup& group() const { return *group_; }
  const std::shared_ptr<const PcGroup>& group_ptr() const { return group_; }
  bool is_identity() const { return is_trivial(exps_); }
  std::string to_string() const { return format_word(exps_); }

  friend bool operator==(const Element& a, const Element& b) {
    return a.group_ == b.group_ && a.exps_ == b.exps_;
  }

 private:
  std::shared_ptr<const PcGroup> group_;
  Exponents exps_;
};

struct ConsistencyVerdict {
  bool consistent = true;
  /// Description of the first failing test word, e.g. "(g3 g2) g1 != g3 (g2 g1)".
  std::string failing_test;
  CollectionStats stats;
};

/// Collector for one presentation. Immutable after construction; every method
/// is const and keeps its scratch state on the stack, so concurrent use from
/// many threads is safe.
class PcGroup : public std::enable_shared_from_this<PcGroup> {
 public:
  /// Validates weighting and, unless `check` is false, consistency.
  static std::shared_ptr<const PcGroup> create(PcPresentation P, CollectOptions opts = {},
                                               bool check = true);

  const PcPresentation& presentation() const { return P_; }
  int prime() const { return P_.prime; }
  int ngens() const { return P_.ngens; }
  const CollectOptions& options() const { return opts_; }

  /// p^n as an unsigned 64-bit count, saturating at UINT64_MAX.
  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (int i = 0; i < P_.ngens; ++i) {
      if (o > UINT64_MAX / static_cast<std::uint64_t>(P_.prime)) return UINT64_MAX;
      o *= static_cast<std::uint64_t>(P_.prime);
    }
    return o;
  }

  // ---- exponent-vector arithmetic (no ownership checks) ----

  /// Multiplies `acc` in place on the right by the word.
  void collect_into(Exponents& acc, std::span<const Letter> word, CollectionStats* stats) const;

  Exponents collect_word(std::span<const Letter> word, CollectionStats* stats = nullptr) const {
    Exponents acc = P_.zero();
    collect_into(acc, word, stats);
    return acc;
  }

  Exponents mul(const Exponents& x, const Exponents& y, CollectionStats* stats = nullptr) const {
    Exponents acc = x;
    right_multiply(acc, y, stats);
    return acc;
  }

  Exponents inv(const Exponents& x, CollectionStats* stats = nullptr) const;
  Exponents pow(const Exponents& x, long long k, CollectionStats* stats = nullptr) const;
  /// Least p^k with x^{p^k} = 1.
  long long order_of(const Exponents& x) const;

  // ---- elements ----

  Element make(Exponents e) const {
    if (static_cast<int>(e.size()) != P_.ngens)
      throw std::invalid_argument("exponent vector has wrong length");
    for (int v : e)
      if (v < 0 || v >= P_.prime) throw std::invalid_argument("exponent out of range [0, p)");
    return Element(shared_from_this(), std::move(e));
  }
  Element identity() const { return Element(shared_from_this(), P_.zero()); }
  Element generator(int i) const {
    if (i < 0 || i >= P_.ngens) throw std::out_of_range("generator index out of range");
    Exponents e = P_.zero();
    e[static_cast<std::size_t>(i)] = 1;
    return Element(shared_from_this(), std::move(e));
  }

  // ---- lexicographic ids (g_1 most significant) ----

  std::uint64_t encode(const Exponents& e) const {
    std::uint64_t id = 0;
    for (int v : e) id = id * static_cast<std::uint64_t>(P_.prime) + static_cast<std::uint64_t>(v);
    return id;
  }
  Exponents decode(std::uint64_t id) const {
    Exponents e = P_.zero();
    for (int k = P_.ngens - 1; k >= 0; --k) {
      e[static_cast<std::size_t>(k)] = static_cast<int>(id % static_cast<std::uint64_t>(P_.prime));
      id /= static_cast<std::uint64_t>(P_.prime);
    }
    return e;
  }

  /// Multiplies acc on the right by the normal word y (processed as g_1^{y_1}...).
  void right_multiply(Exponents& acc, const Exponents& y, CollectionStats* stats) const {
    std::vector<Letter> word;
    word.reserve(y.size());
    for (std::size_t k = 0; k < y.size(); ++k)
      if (y[k] != 0) word.push_back({static_cast<int>(k), y[k]});
    collect_into(acc, word, stats);
  }

  PcGroup(PcPresentation P, CollectOptions opts);

 private:
  struct Item {
    int gen;
    int exp;  // in [1, p)
  };

  PcPresentation P_;
  CollectOptions opts_;
  /// commutes_[j * n + i]: [g_j, g_i] is trivial (either order).
  std::vector<char> commutes_;
  /// Inverses of the generators as normal words, built bottom-up.
  std::vector<Exponents> gen_inverse_;
};

inline PcGroup::PcGroup(PcPresentation P, CollectOptions opts)
    : P_(std::move(P)), opts_(opts) {
  validate_presentation(P_);
  const int n = P_.ngens;
  commutes_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      const bool triv = is_trivial(P_.commutator(j, i));
      commutes_[static_cast<std::size_t>(j * n + i)] = triv;
      commutes_[static_cast<std::size_t>(i * n + j)] = triv;
    }
  // g_i^{-1} = g_i^{p-1} (g_i^p)^{-1}; the power word lives in higher generators.
  gen_inverse_.assign(static_cast<std::size_t>(n), P_.zero());
  for (int i = n - 1; i >= 0; --i) {
    std::vector<Letter> word;
    word.push_back({i, P_.prime - 1});
    const Exponents& w = P_.power(i);
    for (int k = n - 1; k > i; --k)
      for (int r = 0; r < w[static_cast<std::size_t>(k)]; ++r)
        for (std::size_t m = 0; m < static_cast<std::size_t>(n); ++m) {
          const int e = gen_inverse_[static_cast<std::size_t>(k)][m];
          if (e != 0) word.push_back({static_cast<int>(m), e});
        }
    gen_inverse_[static_cast<std::size_t>(i)] = collect_word(word, nullptr);
  }
}

inline void PcGroup::collect_into(Exponents& r, std::span<const Letter> word,
                                  CollectionStats* stats) const {
  const int n = P_.ngens;
  const int p = P_.prime;
  std::vector<Item> stack;
  stack.reserve(64);

  // Letters are pushed in reverse so the first letter is processed first.
  auto push_normal = [&](const Exponents& w) {
    for (int k = n - 1; k >= 0; --k)
      if (w[static_cast<std::size_t>(k)] != 0) stack.push_back({k, w[static_cast<std::size_t>(k)]});
  };

  std::uint64_t steps = 0;
  std::size_t depth = 0;

  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (it->gen < 0 || it->gen >= n)
      throw std::out_of_range("generator index " + std::to_string(it->gen + 1) + " out of range");
  }

  for (const Letter& letter : word) {
    if (letter.exp == 0) continue;
    const auto g = static_cast<std::size_t>(letter.gen);
    // Negative exponents expand through the generator inverse.
    long long k = letter.exp;
    if (k > 0) {
      k %= p;
      // g^{qp + k} = (g^p)^q g^k, and g^p commutes with g.
      long long q = letter.exp / p;
      if (q > 0 && !is_trivial(P_.power(letter.gen))) {
        // g^{qp} is w^q with w = g^p; push k first so that it is processed last.
        if (k != 0) stack.push_back({letter.gen, static_cast<int>(k)});
        for (long long t = 0; t < q; ++t) push_normal(P_.power(letter.gen));
        k = 0;
      }
      if (k != 0) stack.push_back({letter.gen, static_cast<int>(k)});
    } else {
      const long long times = -k;
      const Exponents& gi = gen_inverse_[g];
      // Bounded by the step budget below; huge |exp| are reduced by the caller.
      if (times > static_cast<long long>(opts_.step_budget))
        throw BudgetExceeded("negative exponent too large for direct expansion");
      for (long long t = 0; t < times; ++t) push_normal(gi);
    }

    while (!stack.empty()) {
      depth = std::max(depth, stack.size());
      if (++steps > opts_.step_budget)
        throw BudgetExceeded("collection exceeded step budget of " +
                             std::to_string(opts_.step_budget));
      const Item item = stack.back();
      stack.pop_back();
      const int i = item.gen;
      const auto ui = static_cast<std::size_t>(i);

      bool tail_commutes = true;
      bool tail_empty = true;
      for (int m = i + 1; m < n; ++m) {
        if (r[static_cast<std::size_t>(m)] == 0) continue;
        tail_empty = false;
        if (!commutes_[static_cast<std::size_t>(m * n + i)]) {
          tail_commutes = false;
          break;
        }
      }

      if (tail_commutes) {
        int e = r[ui] + item.exp;
        if (e < p) {
          r[ui] = e;
          continue;
        }
        // Overflow: prefix g_i^{e-p} w_i tail, with tail commuting past g_i.
        r[ui] = e - p;
        if (is_trivial(P_.power(i))) continue;
        if (!tail_empty) {
          for (int m = n - 1; m > i; --m) {
            const auto um = static_cast<std::size_t>(m);
            if (r[um] != 0) {
              stack.push_back({m, r[um]});
              r[um] = 0;
            }
          }
        }
        push_normal(P_.power(i));
        continue;
      }

      // General case: process one copy of g_i, defer the rest.
      if (item.exp > 1) stack.push_back({i, item.exp - 1});
      Exponents tail(static_cast<std::size_t>(n), 0);
      for (int m = i + 1; m < n; ++m) {
        const auto um = static_cast<std::size_t>(m);
        tail[um] = r[um];
        r[um] = 0;
      }
      // After g_i moves left, the tail becomes its conjugate by g_i:
      // g_m^{g_i} = g_m [g_m, g_i].
      for (int m = n - 1; m > i; --m) {
        const auto um = static_cast<std::size_t>(m);
        for (int t = 0; t < tail[um]; ++t) {
          push_normal(P_.commutator(m, i));
          stack.push_back({m, 1});
        }
      }
      ++r[ui];
      if (r[ui] == p) {
        r[ui] = 0;
        push_normal(P_.power(i));
      }
    }
  }
  if (stats) {
    stats->steps += steps;
    stats->max_stack_depth = std::max(stats->max_stack_depth, depth);
  }
}

inline Exponents PcGroup::inv(const Exponents& x, CollectionStats* stats) const {
  // Kill the leading nonzero exponent one position at a time; the factors
  // chosen form the inverse in normal order.
  Exponents r = x;
  Exponents y = P_.zero();
  const int p = P_.prime;
  for (int i = 0; i < P_.ngens; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (r[ui] == 0) continue;
    const int k = p - r[ui];
    y[ui] = k;
    const Letter l{i, k};
    collect_into(r, std::span<const Letter>(&l, 1), stats);
  }
  return y;
}

inline Exponents PcGroup::pow(const Exponents& x, long long k, CollectionStats* stats) const {
  if (k < 0) return pow(inv(x, stats), -k, stats);
  Exponents result = P_.zero();
  Exponents base = x;
  while (k > 0) {
    if (k & 1) right_multiply(result, base, stats);
    k >>= 1;
    if (k > 0) base = mul(base, base, stats);
  }
  return result;
}

inline long long PcGroup::order_of(const Exponents& x) const {
  long long ord = 1;
  Exponents y = x;
  while (!is_trivial(y)) {
    y = pow(y, P_.prime);
    ord *= P_.prime;
  }
  return ord;
}

// ---- free-function surface ----

inline void require_same_group(const Element& x, const Element& y) {
  if (x.group_ptr() != y.group_ptr())
    throw PresentationError("elements belong to different presentations");
}

inline Element collect(std::span<const Letter> word, const PcGroup& G,
                       CollectionStats* stats = nullptr) {
  return G.make(G.collect_word(word, stats));
}

inline Element multiply(const Element& x, const Element& y) {
  require_same_group(x, y);
  return x.group().make(x.group().mul(x.exponents(), y.exponents()));
}

inline Element inverse(const Element& x) { return x.group().make(x.group().inv(x.exponents())); }

inline Element power(const Element& x, long long k) {
  return x.group().make(x.group().pow(x.exponents(), k));
}

inline long long element_order(const Element& x) { return x.group().order_of(x.exponents()); }

/// Commutator [x, y] = x^{-1} y^{-1} x y.
inline Element commutator(const Element& x, const Element& y) {
  return multiply(inverse(multiply(y, x)), multiply(x, y));
}

/// All p^n normal words in lexicographic order.
inline std::vector<Element> enumerate_elements(const PcGroup& G, std::uint64_t cap = 19683) {
  const std::uint64_t N = G.order();
  if (N > cap)
    throw CapExceeded("group order " + (N == UINT64_MAX ? std::string("> 2^64") : std::to_string(N)) +
                      " exceeds enumeration cap " + std::to_string(cap));
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(N));
  for (std::uint64_t id = 0; id < N; ++id) out.push_back(G.make(G.decode(id)));
  return out;
}

/// Standard test words for a presentation with every relative order p:
///   (g_k g_j) g_i = g_k (g_j g_i)              k > j > i
///   (g_j^{p-1} g_j) g_i = g_j^{p-1} (g_j g_i)  j > i
///   g_j (g_i^{p-1} g_i) = (g_j g_i^{p-1}) g_i  j > i
///   (g_i^{p-1} g_i) g_i = g_i^{p-1} (g_i g_i)
/// Each bracketed product is collected before the outer multiplication.
inline ConsistencyVerdict check_consistency(const PcPresentation& P, CollectOptions opts = {}) {
  const auto G = PcGroup::create(P, opts, /*check=*/false);
  ConsistencyVerdict v;
  const int n = P.ngens;
  const int p = P.prime;
  auto gen = [&](int i, int e = 1) {
    Exponents x = P.zero();
    x[static_cast<std::size_t>(i)] = e;
    return x;
  };
  auto name = [](int i, int e = 1) {
    return "g" + std::to_string(i + 1) + (e == 1 ? "" : "^" + std::to_string(e));
  };
  auto fail = [&](std::string what) {
    v.consistent = false;
    v.failing_test = std::move(what);
    return v;
  };
  CollectionStats* st = &v.stats;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < j; ++i) {
        const Exponents lhs = G->mul(G->mul(gen(k), gen(j), st), gen(i), st);
        const Exponents rhs = G->mul(gen(k), G->mul(gen(j), gen(i), st), st);
        if (lhs != rhs)
          return fail("(" + name(k) + " " + name(j) + ") " + name(i) + " != " + name(k) + " (" +
                      name(j) + " " + name(i) + ")");
      }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      const Exponents lhs = G->mul(G->mul(gen(j, p - 1), gen(j), st), gen(i), st);
      const Exponents rhs = G->mul(gen(j, p - 1), G->mul(gen(j), gen(i), st), st);
      if (lhs != rhs)
        return fail("(" + name(j, p - 1) + " " + name(j) + ") " + name(i) + " != " +
                    name(j, p - 1) + " (" + name(j) + " " + name(i) + ")");
      const Exponents lhs2 = G->mul(gen(j), G->mul(gen(i, p - 1), gen(i), st), st);
      const Exponents rhs2 = G->mul(G->mul(gen(j), gen(i, p - 1), st), gen(i), st);
      if (lhs2 != rhs2)
        return fail(name(j) + " (" + name(i, p - 1) + " " + name(i) + ") != (" + name(j) + " " +
                    name(i, p - 1) + ") " + name(i));
    }
  for (int i = 0; i < n; ++i) {
    const Exponents lhs = G->mul(G->mul(gen(i, p - 1), gen(i), st), gen(i), st);
    const Exponents rhs = G->mul(gen(i, p - 1), G->mul(gen(i), gen(i), st), st);
    if (lhs != rhs)
      return fail("(" + name(i, p - 1) + " " + name(i) + ") " + name(i) + " != " + name(i, p - 1) +
                  " (" + name(i) + " " + name(i) + ")");
  }
  return v;
}

inline std::shared_ptr<const PcGroup> PcGroup::create(PcPresentation P, CollectOptions opts,
                                                      bool check) {
  if (check) {
    const auto verdict = check_consistency(P, opts);
    if (!verdict.consistent)
      throw PresentationError("inconsistent presentation: " + verdict.failing_test);
  }
  return std::make_shared<const PcGroup>(std::move(P), opts);
}

}  // namespace pgroup
