#pragma once

// Corpus configuration: one group per line, either a builtin family
//   family=heisenberg p=3 e=2 [type=2,1] [variant=exp-p] [name=G2]
// or a presentation file
//   include=presentations/g1.pcp
// Paths are resolved relative to the config file. `#` starts a comment.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pgroup/families.hpp"

namespace pgroup {

struct CorpusEntry {
  std::size_t line = 0;
  std::optional<FamilySpec> family;
  /// Set for include= lines: the path as written and the parsed presentation.
  std::string include_path;
  std::optional<PcPresentation> presentation;

  std::string name() const {
    if (family) return family->display_name();
    if (!presentation->name.empty()) return presentation->name;
    return std::filesystem::path(include_path).stem().string();
  }
  /// Canonical one-line form, used for the digest.
  std::string canonical() const {
    if (!family) return "include=" + include_path + "\n" + print_presentation(*presentation);
    std::string s = "family=" + family->family + " p=" + std::to_string(family->p) +
                    " e=" + std::to_string(family->e);
    if (!family->type.empty()) {
      s += " type=";
      for (std::size_t k = 0; k < family->type.size(); ++k)
        s += (k ? "," : "") + std::to_string(family->type[k]);
    }
    if (!family->variant.empty()) s += " variant=" + family->variant;
    if (!family->name.empty()) s += " name=" + family->name;
    return s;
  }
};

struct Corpus {
  std::vector<CorpusEntry> entries;

  /// FNV-1a over the canonical entries, as 16 hex digits.
  std::string digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& e : entries)
      for (char c : e.canonical() + "\n") {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
      }
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
  }
};

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline int corpus_int(const std::string& value, std::size_t line, std::size_t col) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw ParseError(line, col, "expected integer, got '" + value + "'");
  return v;
}

}  // namespace detail

inline Corpus parse_corpus(std::string_view text, const std::filesystem::path& base_dir = ".") {
  Corpus corpus;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    std::vector<std::pair<std::string, std::size_t>> tokens;
    for (std::size_t pos = 0; pos < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[pos]))) {
        ++pos;
        continue;
      }
      const std::size_t start = pos;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      tokens.emplace_back(line.substr(start, pos - start), start + 1);
    }
    if (tokens.empty()) continue;

    CorpusEntry entry;
    entry.line = line_no;
    FamilySpec spec;
    bool have_family = false;
    for (const auto& [tok, col] : tokens) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) throw ParseError(line_no, col, "expected key=value, got '" + tok + "'");
      const std::string key = tok.substr(0, eq);
      const std::string value = tok.substr(eq + 1);
      const std::size_t vcol = col + eq + 1;
      if (key == "include") {
        if (tokens.size() != 1) throw ParseError(line_no, col, "include= must stand alone on its line");
        entry.include_path = value;
        const std::filesystem::path path = base_dir / value;
        try {
          entry.presentation = parse_presentation(read_text_file(path));
        } catch (const ParseError& e) {
          throw ParseError(line_no, vcol, value + ": " + e.what());
        } catch (const std::runtime_error& e) {
          throw ParseError(line_no, vcol, e.what());
        }
      } else if (key == "family") {
        spec.family = value;
        have_family = true;
      } else if (key == "p") {
        spec.p = detail::corpus_int(value, line_no, vcol);
      } else if (key == "e" || key == "k" || key == "n") {
        spec.e = detail::corpus_int(value, line_no, vcol);
      } else if (key == "type") {
        std::istringstream parts(value);
        std::string part;
        while (std::getline(parts, part, ',')) spec.type.push_back(detail::corpus_int(part, line_no, vcol));
      } else if (key == "variant") {
        spec.variant = value;
      } else if (key == "name") {
        spec.name = value;
      } else {
        throw ParseError(line_no, col, "unknown key '" + key + "'");
      }
    }
    if (!entry.presentation) {
      if (!have_family) throw ParseError(line_no, 1, "entry needs family= or include=");
      entry.family = spec;
    }
    corpus.entries.push_back(std::move(entry));
  }
  return corpus;
}

inline Corpus load_corpus(const std::filesystem::path& path) {
  return parse_corpus(read_text_file(path), path.parent_path());
}

inline BuiltGroup build_entry(const CorpusEntry& e) {
  if (e.family) return build_family(*e.family);
  const auto v = check_consistency(*e.presentation);
  if (!v.consistent)
    throw PresentationError(e.include_path + " is inconsistent: " + v.failing_test);
  return BuiltGroup{e.name(), *e.presentation};
}

}  // namespace pgroup
