#pragma once

// Builtin group families. Presentation-backed families emit refined
// power-commutator presentations; the 2-group controls (dihedral, quaternion,
// semidihedral) are written directly as Cayley tables so they do not depend on
// the collector they are used to test.

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "pgroup/collector.hpp"
#include "pgroup/error.hpp"
#include "pgroup/group_handle.hpp"
#include "pgroup/table_group.hpp"

namespace pgroup {

struct FamilySpec {
  std::string family;
  int p = 0;
  /// Size parameter: exponent log for cyclic/heisenberg/modular, rank for
  /// elementary_abelian, log_2 |G| for the 2-group controls.
  int e = 0;
  /// Cyclic factor logs for abelian(p; type).
  std::vector<int> type;
  /// "exp-p" or "exp-p2" for extraspecial.
  std::string variant;
  /// Optional display name; defaults to a generated one.
  std::string name;

  std::string display_name() const;
};

/// Result of a family constructor: a presentation or a handwritten table.
struct BuiltGroup {
  std::string name;
  std::variant<PcPresentation, TableGroup> value;

  bool has_presentation() const { return std::holds_alternative<PcPresentation>(value); }
  const PcPresentation& presentation() const { return std::get<PcPresentation>(value); }
  const TableGroup& table() const { return std::get<TableGroup>(value); }
};

namespace detail {

inline std::string type_string(const std::vector<int>& type) {
  std::string s;
  for (std::size_t k = 0; k < type.size(); ++k) s += (k ? "," : "") + std::to_string(type[k]);
  return s;
}

inline long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Direct product of cyclic p-groups C_{p^{k_1}} x ...; each factor is a chain
/// g, g^p, g^{p^2}, ... of consecutive generators.
inline PcPresentation abelian_presentation(int p, const std::vector<int>& type, std::string name) {
  int n = 0;
  for (int k : type) n += k;
  PcPresentation P(p, n, std::move(name));
  int base = 0;
  for (int k : type) {
    for (int t = 0; t + 1 < k; ++t) P.set_power(base + t, base + t + 1);
    base += k;
  }
  return P;
}

inline void require_odd(const FamilySpec& s) {
  if (s.p == 2) throw PresentationError(s.family + " requires an odd prime");
}

inline void require_two(const FamilySpec& s) {
  if (s.p != 2) throw PresentationError(s.family + " is defined for p = 2 only");
}

/// r^a s^b with id = b * m + a; mult(a, b, c, d) gives (exponent of r, of s).
template <class Rule>
TableGroup dihedral_like(int k, const std::string& name, Rule rule) {
  const int m = 1 << (k - 1);
  const auto N = static_cast<std::size_t>(2 * m);
  std::vector<ElementId> mul(N * N);
  std::vector<std::string> labels(N);
  auto id = [m](int a, int b) { return static_cast<ElementId>(b * m + a); };
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < m; ++a) {
      std::string s;
      if (a) s = a == 1 ? "r" : "r^" + std::to_string(a);
      if (b) s += s.empty() ? "s" : "*s";
      labels[id(a, b)] = s.empty() ? "id" : s;
    }
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < m; ++a)
      for (int d = 0; d < 2; ++d)
        for (int c = 0; c < m; ++c) {
          const auto [ra, sb] = rule(m, a, b, c, d);
          mul[id(a, b) * N + id(c, d)] = id(((ra % m) + m) % m, sb % 2);
        }
  TableOptions opts;
  opts.cap = UINT64_MAX;
  opts.exhaustive_assoc_limit = 4096;
  return TableGroup::from_cayley(2, N, std::move(mul), std::move(labels), {id(1, 0), id(0, 1)},
                                 name, opts);
}

}  // namespace detail

inline std::string FamilySpec::display_name() const {
  if (!name.empty()) return name;
  const std::string ps = std::to_string(p);
  if (family == "cyclic") return "C" + std::to_string(detail::ipow(p, e));
  if (family == "elementary_abelian") return "E" + ps + "^" + std::to_string(e);
  if (family == "abelian") {
    std::string s;
    for (int k : type) s += (s.empty() ? "C" : "xC") + std::to_string(detail::ipow(p, k));
    return s;
  }
  if (family == "heisenberg") return "heisenberg(" + ps + "," + std::to_string(e) + ")";
  if (family == "extraspecial") return "extraspecial(" + ps + "," + variant + ")";
  if (family == "modular") return "M" + std::to_string(detail::ipow(p, e));
  if (family == "wreath") return "C" + ps + "wrC" + ps;
  if (family == "dihedral") return "D" + std::to_string(detail::ipow(2, e));
  if (family == "quaternion") return "Q" + std::to_string(detail::ipow(2, e));
  if (family == "semidihedral") return "SD" + std::to_string(detail::ipow(2, e));
  return family;
}

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{
      "cyclic",  "abelian", "elementary_abelian", "heisenberg",   "extraspecial",
      "modular", "wreath",  "dihedral",           "quaternion",   "semidihedral"};
  return names;
}

/// Builds a family member. Presentation outputs are checked for consistency.
inline BuiltGroup build_family(const FamilySpec& s) {
  if (!is_prime(s.p)) throw PresentationError("p = " + std::to_string(s.p) + " is not prime");
  const std::string name = s.display_name();
  auto checked = [&](PcPresentation P) {
    const auto v = check_consistency(P);
    if (!v.consistent)
      throw std::logic_error("family " + s.family + " produced an inconsistent presentation: " +
                             v.failing_test);
    return BuiltGroup{name, std::move(P)};
  };
  const std::string& f = s.family;
  if (f == "cyclic") {
    if (s.e < 0) throw PresentationError("cyclic needs e >= 0");
    return checked(detail::abelian_presentation(s.p, {s.e}, name));
  }
  if (f == "elementary_abelian") {
    if (s.e < 0) throw PresentationError("elementary_abelian needs e >= 0");
    return checked(detail::abelian_presentation(s.p, std::vector<int>(static_cast<std::size_t>(s.e), 1), name));
  }
  if (f == "abelian") {
    if (s.type.empty()) throw PresentationError("abelian needs type=<k1,k2,...>");
    for (int k : s.type)
      if (k < 1) throw PresentationError("abelian type entries must be >= 1");
    return checked(detail::abelian_presentation(s.p, s.type, name));
  }
  if (f == "heisenberg") {
    // <a, b, c | a^{p^e}, b^{p^e}, c^{p^e}, [c,a], [c,b], [b,a] = c>, refined to
    // chains a_0..a_{e-1}, b_0.., c_0.. with a_t = a^{p^t}.
    // Class 2 gives [b_k, a_l] = c^{p^{k+l}}.
    detail::require_odd(s);
    if (s.e < 1) throw PresentationError("heisenberg needs e >= 1");
    const int e = s.e;
    PcPresentation P(s.p, 3 * e, name);
    auto A = [](int t) { return t; };
    auto B = [e](int t) { return e + t; };
    auto C = [e](int t) { return 2 * e + t; };
    for (int t = 0; t + 1 < e; ++t) {
      P.set_power(A(t), A(t + 1));
      P.set_power(B(t), B(t + 1));
      P.set_power(C(t), C(t + 1));
    }
    for (int k = 0; k < e; ++k)
      for (int l = 0; l < e; ++l)
        if (k + l < e) P.commutator(B(k), A(l))[static_cast<std::size_t>(C(k + l))] = 1;
    return checked(std::move(P));
  }
  if (f == "extraspecial") {
    detail::require_odd(s);
    if (s.variant == "exp-p") {
      FamilySpec h{"heisenberg", s.p, 1, {}, {}, name};
      return build_family(h);
    }
    if (s.variant == "exp-p2") {
      FamilySpec m{"modular", s.p, 3, {}, {}, name};
      return build_family(m);
    }
    throw PresentationError("extraspecial variant must be exp-p or exp-p2");
  }
  if (f == "modular") {
    // M_{p^k} = <a, b | a^{p^{k-1}}, b^p, a^b = a^{1+p^{k-2}}>.
    // Generators: g1 = a, g2 = b, g3 = a^p, ..., gk = a^{p^{k-2}};
    // [b, a] = a^{-p^{k-2}} = gk^{p-1}.
    if (s.e < 3 || (s.p == 2 && s.e < 4))
      throw PresentationError("modular needs k >= 3 (k >= 4 when p = 2)");
    const int k = s.e;
    PcPresentation P(s.p, k, name);
    auto a_chain = [](int t) { return t == 0 ? 0 : t + 1; };
    for (int t = 0; t + 1 <= k - 2; ++t) P.set_power(a_chain(t), a_chain(t + 1));
    P.commutator(1, 0)[static_cast<std::size_t>(a_chain(k - 2))] = s.p - 1;
    return checked(std::move(P));
  }
  if (f == "wreath") {
    // C_p wr C_p: g1 = t, g2..g_{p+1} the base F_p[t]/(t-1)^p in the basis
    // (t-1)^m, so [g_{m}, g1] = g_{m+1}.
    if (s.p > 7) throw PresentationError("wreath is limited to p <= 7");
    const int n = s.p + 1;
    PcPresentation P(s.p, n, name);
    for (int m = 1; m + 1 < n; ++m) P.commutator(m, 0)[static_cast<std::size_t>(m + 1)] = 1;
    return checked(std::move(P));
  }
  if (f == "dihedral") {
    detail::require_two(s);
    if (s.e < 2 || s.e > 12) throw PresentationError("dihedral needs 2 <= e <= 12");
    return {name, detail::dihedral_like(s.e, name, [](int, int a, int b, int c, int d) {
              return std::pair{a + (b ? -c : c), b + d};
            })};
  }
  if (f == "quaternion") {
    detail::require_two(s);
    if (s.e < 3 || s.e > 12) throw PresentationError("quaternion needs 3 <= e <= 12");
    return {name, detail::dihedral_like(s.e, name, [](int m, int a, int b, int c, int d) {
              return std::pair{a + (b ? -c : c) + (b && d ? m / 2 : 0), b + d};
            })};
  }
  if (f == "semidihedral") {
    detail::require_two(s);
    if (s.e < 4 || s.e > 12) throw PresentationError("semidihedral needs 4 <= e <= 12");
    return {name, detail::dihedral_like(s.e, name, [](int m, int a, int b, int c, int d) {
              return std::pair{a + (b ? c * (m / 2 - 1) : c), b + d};
            })};
  }
  throw PresentationError("unknown family '" + f + "'");
}

/// Handle for a built group: table-backed when within the table cap (or
/// forced), otherwise collection-backed.
inline GroupHandle make_handle(const BuiltGroup& g, bool prefer_table = true, Caps caps = {}) {
  if (!g.has_presentation()) {
    auto h = GroupHandle::from_table(std::make_shared<const TableGroup>(g.table()));
    h.set_name(g.name);
    return h;
  }
  auto G = PcGroup::create(g.presentation());
  GroupHandle h;
  if (prefer_table && G->order() <= caps.table) {
    h = GroupHandle::table_of(*G, TableOptions{caps.table});
  } else {
    h = GroupHandle::from_presentation(G, caps);
  }
  h.set_name(g.name);
  return h;
}

inline GroupHandle make_handle(const FamilySpec& s, bool prefer_table = true, Caps caps = {}) {
  return make_handle(build_family(s), prefer_table, caps);
}

}  // namespace pgroup
