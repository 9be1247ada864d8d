#pragma once

// Power-commutator presentations of finite p-groups: the data type, its
// line-oriented text format, and the canonical printer.
//
//   group p=3 n=3 name=G1
//   # comment
//   g1^3 = g2^2*g3
//   [g2,g1] = g3
//
// Generators are 1-based in text and 0-based in memory. Every relative order
// is p. Unstated rules are trivial.

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pgroup/error.hpp"

namespace pgroup {

/// Exponent vector of a normal word g_1^{e_1} ... g_n^{e_n}, each e_i in [0, p).
using Exponents = std::vector<int>;

inline bool is_prime(long long v) {
  if (v < 2) return false;
  for (long long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

struct PcPresentation {
  int prime = 2;
  int ngens = 0;
  /// power_rules[i] is the normal form of g_i^p (support in i+1..n-1).
  std::vector<Exponents> power_rules;
  /// Dense n*n table; entry (j, i) with j > i holds [g_j, g_i] (support in j+1..n-1).
  std::vector<Exponents> commutator_table;
  std::string name;

  PcPresentation() = default;
  PcPresentation(int p, int n, std::string label = {})
      : prime(p),
        ngens(n),
        power_rules(static_cast<std::size_t>(n), Exponents(static_cast<std::size_t>(n), 0)),
        commutator_table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                         Exponents(static_cast<std::size_t>(n), 0)),
        name(std::move(label)) {}

  const Exponents& power(int i) const { return power_rules.at(static_cast<std::size_t>(i)); }
  Exponents& power(int i) { return power_rules.at(static_cast<std::size_t>(i)); }

  const Exponents& commutator(int j, int i) const {
    return commutator_table.at(static_cast<std::size_t>(j) * static_cast<std::size_t>(ngens) +
                               static_cast<std::size_t>(i));
  }
  Exponents& commutator(int j, int i) {
    return commutator_table.at(static_cast<std::size_t>(j) * static_cast<std::size_t>(ngens) +
                               static_cast<std::size_t>(i));
  }

  Exponents zero() const { return Exponents(static_cast<std::size_t>(ngens), 0); }

  /// Sets g_i^p = g_{target}^{exp}; convenience for chain encodings.
  void set_power(int i, int target, int exp = 1) {
    power(i) = zero();
    if (target >= 0) power(i)[static_cast<std::size_t>(target)] = exp;
  }

  friend bool operator==(const PcPresentation& a, const PcPresentation& b) {
    return a.prime == b.prime && a.ngens == b.ngens && a.power_rules == b.power_rules &&
           a.commutator_table == b.commutator_table && a.name == b.name;
  }
};

inline bool is_trivial(const Exponents& w) {
  for (int e : w)
    if (e != 0) return false;
  return true;
}

/// Throws PresentationError unless p is prime, shapes agree, exponents lie in
/// [0, p), and every rule respects the weighting constraint.
inline void validate_presentation(const PcPresentation& P) {
  if (!is_prime(P.prime))
    throw PresentationError("p = " + std::to_string(P.prime) + " is not prime");
  if (P.ngens < 0) throw PresentationError("negative generator count");
  const auto n = static_cast<std::size_t>(P.ngens);
  if (P.power_rules.size() != n || P.commutator_table.size() != n * n)
    throw PresentationError("rule tables do not match generator count");
  auto check_word = [&](const Exponents& w, int min_index, const std::string& where) {
    if (w.size() != n) throw PresentationError(where + ": word has wrong length");
    for (std::size_t k = 0; k < n; ++k) {
      if (w[k] < 0 || w[k] >= P.prime)
        throw PresentationError(where + ": exponent out of range [0, p)");
      if (w[k] != 0 && static_cast<int>(k) < min_index)
        throw PresentationError(where + ": mentions g" + std::to_string(k + 1) +
                                ", violating the weighting constraint");
    }
  };
  for (int i = 0; i < P.ngens; ++i) {
    check_word(P.power(i), i + 1, "power rule of g" + std::to_string(i + 1));
    for (int j = 0; j < P.ngens; ++j) {
      const auto& c = P.commutator(j, i);
      if (j <= i) {
        if (!is_trivial(c))
          throw PresentationError("commutator [g" + std::to_string(j + 1) + ",g" +
                                  std::to_string(i + 1) + "] must be stated with j > i");
        continue;
      }
      check_word(c, j + 1, "commutator [g" + std::to_string(j + 1) + ",g" +
                               std::to_string(i + 1) + "]");
    }
  }
}

/// Normal-word notation: "id" or "g1^2*g3".
inline std::string format_word(const Exponents& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'g' + std::to_string(k + 1);
    if (w[k] != 1) out += '^' + std::to_string(w[k]);
  }
  return out.empty() ? "id" : out;
}

/// Canonical text: header, then nontrivial power rules, then nontrivial
/// commutator rules, each in index order.
inline std::string print_presentation(const PcPresentation& P) {
  std::ostringstream os;
  os << "group p=" << P.prime << " n=" << P.ngens;
  if (!P.name.empty()) os << " name=" << P.name;
  os << '\n';
  for (int i = 0; i < P.ngens; ++i)
    if (!is_trivial(P.power(i)))
      os << 'g' << i + 1 << '^' << P.prime << " = " << format_word(P.power(i)) << '\n';
  for (int j = 0; j < P.ngens; ++j)
    for (int i = 0; i < j; ++i)
      if (!is_trivial(P.commutator(j, i)))
        os << "[g" << j + 1 << ",g" << i + 1 << "] = " << format_word(P.commutator(j, i)) << '\n';
  return os.str();
}

namespace detail {

class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(std::string_view w) {
    skip_space();
    if (text_.substr(pos_, w.size()) != w) return false;
    const std::size_t after = pos_ + w.size();
    if (after < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[after])) ||
                                 text_[after] == '_'))
      return false;
    pos_ = after;
    return true;
  }
  long long number() {
    skip_space();
    const std::size_t start = pos_;
    bool neg = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      pos_ = start;
      fail("expected integer");
    }
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > (1LL << 40)) fail("integer too large");
      ++pos_;
    }
    return neg ? -v : v;
  }
  std::string token() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected token");
    return std::string(text_.substr(start, pos_ - start));
  }
  /// Parses `g<k>` and returns the 1-based index.
  int generator() {
    if (!accept('g')) fail("expected generator g<index>");
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected generator index");
    return static_cast<int>(number());
  }
  std::size_t column() const { return pos_ + 1; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, pos_ + 1, msg); }
  [[noreturn]] void fail_at(std::size_t col, const std::string& msg) const {
    throw ParseError(line_, col, msg);
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

inline Exponents parse_word(LineCursor& cur, const PcPresentation& P, int min_index) {
  Exponents w = P.zero();
  if (cur.accept_word("id")) return w;
  int last = 0;
  do {
    const std::size_t col = cur.column();
    const int g = cur.generator();
    if (g < 1 || g > P.ngens) cur.fail("generator g" + std::to_string(g) + " out of range");
    if (g <= last) cur.fail("word indices must be strictly increasing");
    if (g - 1 < min_index)
      cur.fail_at(col, "g" + std::to_string(g) + " violates the weighting constraint");
    long long e = 1;
    if (cur.accept('^')) e = cur.number();
    if (e < 1 || e >= P.prime) cur.fail("word exponent must lie in [1, p)");
    w[static_cast<std::size_t>(g - 1)] = static_cast<int>(e);
    last = g;
  } while (cur.accept('*'));
  return w;
}

}  // namespace detail

/// Parses a single normal word such as `g1^2*g3` (or `id`) against P.
inline Exponents parse_element(std::string_view text, const PcPresentation& P) {
  detail::LineCursor cur(text, 1);
  Exponents w = detail::parse_word(cur, P, 0);
  if (!cur.at_end()) cur.fail("trailing input after word");
  return w;
}

/// Parses the line-oriented presentation format. Errors carry line and column.
inline PcPresentation parse_presentation(std::string_view source) {
  std::optional<PcPresentation> P;
  std::vector<char> power_seen;
  std::vector<char> comm_seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view line = source.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    detail::LineCursor cur(line, line_no);
    if (cur.at_end()) {
      if (end == source.size()) break;
      continue;
    }
    {
      if (!P) {
        if (!cur.accept_word("group")) cur.fail("expected header 'group p=<prime> n=<count>'");
        if (!cur.accept_word("p")) cur.fail("expected 'p='");
        cur.expect('=');
        const std::size_t pcol = cur.column();
        const long long p = cur.number();
        if (!is_prime(p)) cur.fail_at(pcol, "p = " + std::to_string(p) + " is not prime");
        if (!cur.accept_word("n")) cur.fail("expected 'n='");
        cur.expect('=');
        const long long n = cur.number();
        if (n < 0 || n > 64) cur.fail("generator count must lie in [0, 64]");
        std::string name;
        if (cur.accept_word("name")) {
          cur.expect('=');
          name = cur.token();
        }
        if (!cur.at_end()) cur.fail("unexpected trailing text in header");
        P.emplace(static_cast<int>(p), static_cast<int>(n), name);
        power_seen.assign(static_cast<std::size_t>(n), 0);
        comm_seen.assign(static_cast<std::size_t>(n * n), 0);
        continue;
      }
      if (cur.accept('[')) {
        const int j = cur.generator();
        cur.expect(',');
        const int i = cur.generator();
        cur.expect(']');
        if (j < 1 || j > P->ngens || i < 1 || i > P->ngens)
          cur.fail("commutator generator out of range");
        if (j <= i)
          cur.fail("commutator [g" + std::to_string(j) + ",g" + std::to_string(i) +
                   "] violates the weighting constraint (need j > i)");
        cur.expect('=');
        auto& slot = comm_seen[static_cast<std::size_t>((j - 1) * P->ngens + (i - 1))];
        if (slot) cur.fail("duplicate commutator rule");
        slot = 1;
        P->commutator(j - 1, i - 1) = detail::parse_word(cur, *P, j);
      } else {
        const int i = cur.generator();
        if (i < 1 || i > P->ngens) cur.fail("generator g" + std::to_string(i) + " out of range");
        cur.expect('^');
        const std::size_t ocol = cur.column();
        long long order = 0;
        if (cur.accept_word("p")) {
          order = P->prime;
        } else {
          order = cur.number();
        }
        if (order != P->prime)
          cur.fail_at(ocol, "relative order " + std::to_string(order) + " declared; only p = " +
                                std::to_string(P->prime) + " is supported");
        cur.expect('=');
        auto& slot = power_seen[static_cast<std::size_t>(i - 1)];
        if (slot) cur.fail("duplicate power rule");
        slot = 1;
        P->power(i - 1) = detail::parse_word(cur, *P, i);
      }
      if (!cur.at_end()) cur.fail("unexpected trailing text");
    }
    if (end == source.size()) break;
  }
  if (!P) throw ParseError(line_no, 1, "missing 'group' header");
  return *P;
}

}  // namespace pgroup
