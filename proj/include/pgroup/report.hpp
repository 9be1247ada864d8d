#pragma once

// Suite report types and their renderings. The structured form is JSON:
//   {tool_version, seed, corpus_digest, checks, groups: [{name, source, prime,
//    order, exponent, class, d, verdicts, witnesses, timings_ms, error}],
//    summary}
// `timings_ms` is null unless timings were requested, so that two runs with the
// same corpus and seed serialize to identical bytes.

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pgroup {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Status tokens. Predicates report holds/fails; theorem checks report
/// consistent/violation, or skipped when their hypothesis does not apply.
namespace status {
inline constexpr const char* holds = "holds";
inline constexpr const char* fails = "fails";
inline constexpr const char* consistent = "consistent";
inline constexpr const char* violation = "violation";
inline constexpr const char* skipped = "skipped";
inline constexpr const char* error = "error";
}  // namespace status

struct Witness {
  std::string check;
  std::string kind;
  /// Elements in normal-word notation.
  std::vector<std::string> elements;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct CheckOutcome {
  std::string check;
  std::string status;
  std::string detail;
  Json data = Json::object();

  friend bool operator==(const CheckOutcome&, const CheckOutcome&) = default;
};

struct GroupResult {
  std::string name;
  std::string source;
  int prime = 0;
  std::uint64_t order = 0;
  std::uint64_t exponent = 0;
  int nil_class = 0;
  int d = 0;
  std::vector<CheckOutcome> verdicts;
  std::vector<Witness> witnesses;
  std::optional<std::map<std::string, double>> timings_ms;
  /// Set when the group could not be built; no checks ran.
  std::string error;

  const CheckOutcome* verdict(const std::string& check) const {
    for (const auto& v : verdicts)
      if (v.check == check) return &v;
    return nullptr;
  }

  friend bool operator==(const GroupResult&, const GroupResult&) = default;
};

struct SuiteReport {
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
  std::string corpus_digest;
  std::vector<std::string> checks;
  std::vector<GroupResult> groups;

  std::size_t count(const std::string& st) const {
    std::size_t n = 0;
    for (const auto& g : groups)
      for (const auto& v : g.verdicts) n += v.status == st;
    return n;
  }
  std::size_t violations() const { return count(status::violation); }
  std::size_t errors() const {
    std::size_t n = count(status::error);
    for (const auto& g : groups) n += !g.error.empty();
    return n;
  }
  const GroupResult* group(const std::string& name) const {
    for (const auto& g : groups)
      if (g.name == name) return &g;
    return nullptr;
  }

  friend bool operator==(const SuiteReport&, const SuiteReport&) = default;
};

inline Json to_json(const SuiteReport& r) {
  Json doc;
  doc["tool_version"] = r.tool_version;
  doc["seed"] = r.seed;
  doc["corpus_digest"] = r.corpus_digest;
  doc["checks"] = r.checks;
  Json groups = Json::array();
  for (const auto& g : r.groups) {
    Json jg;
    jg["name"] = g.name;
    jg["source"] = g.source;
    jg["prime"] = g.prime;
    jg["order"] = g.order;
    jg["exponent"] = g.exponent;
    jg["class"] = g.nil_class;
    jg["d"] = g.d;
    Json verdicts = Json::object();
    for (const auto& v : g.verdicts)
      verdicts[v.check] = Json{{"status", v.status}, {"detail", v.detail}, {"data", v.data}};
    jg["verdicts"] = std::move(verdicts);
    Json wit = Json::array();
    for (const auto& w : g.witnesses)
      wit.push_back(Json{{"check", w.check}, {"kind", w.kind}, {"elements", w.elements}});
    jg["witnesses"] = std::move(wit);
    if (g.timings_ms) {
      Json t = Json::object();
      for (const auto& [k, ms] : *g.timings_ms) t[k] = ms;
      jg["timings_ms"] = std::move(t);
    } else {
      jg["timings_ms"] = nullptr;
    }
    jg["error"] = g.error.empty() ? Json(nullptr) : Json(g.error);
    groups.push_back(std::move(jg));
  }
  doc["groups"] = std::move(groups);
  doc["summary"] = Json{{"groups", r.groups.size()},
                        {"violations", r.violations()},
                        {"errors", r.errors()}};
  return doc;
}

inline SuiteReport from_json(const Json& doc) {
  SuiteReport r;
  r.tool_version = doc.at("tool_version").get<std::string>();
  r.seed = doc.at("seed").get<std::uint64_t>();
  r.corpus_digest = doc.at("corpus_digest").get<std::string>();
  r.checks = doc.at("checks").get<std::vector<std::string>>();
  for (const auto& jg : doc.at("groups")) {
    GroupResult g;
    g.name = jg.at("name").get<std::string>();
    g.source = jg.at("source").get<std::string>();
    g.prime = jg.at("prime").get<int>();
    g.order = jg.at("order").get<std::uint64_t>();
    g.exponent = jg.at("exponent").get<std::uint64_t>();
    g.nil_class = jg.at("class").get<int>();
    g.d = jg.at("d").get<int>();
    for (const auto& [check, v] : jg.at("verdicts").items())
      g.verdicts.push_back(CheckOutcome{check, v.at("status").get<std::string>(),
                                        v.at("detail").get<std::string>(), v.at("data")});
    for (const auto& w : jg.at("witnesses"))
      g.witnesses.push_back(Witness{w.at("check").get<std::string>(), w.at("kind").get<std::string>(),
                                    w.at("elements").get<std::vector<std::string>>()});
    if (!jg.at("timings_ms").is_null()) {
      std::map<std::string, double> t;
      for (const auto& [k, ms] : jg.at("timings_ms").items()) t[k] = ms.get<double>();
      g.timings_ms = std::move(t);
    }
    if (!jg.at("error").is_null()) g.error = jg.at("error").get<std::string>();
    r.groups.push_back(std::move(g));
  }
  return r;
}

/// Aligned table of groups against checks, followed by the witnesses.
inline std::string render_text(const SuiteReport& r) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"group", "order", "exp", "class", "d"};
  header.insert(header.end(), r.checks.begin(), r.checks.end());
  rows.push_back(header);
  for (const auto& g : r.groups) {
    std::vector<std::string> row{g.name, std::to_string(g.order), std::to_string(g.exponent),
                                 std::to_string(g.nil_class), std::to_string(g.d)};
    for (const auto& c : r.checks) {
      const CheckOutcome* v = g.verdict(c);
      row.push_back(!g.error.empty() ? "error" : v ? v->status : "-");
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows)
    for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      out << std::left << std::setw(static_cast<int>(width[k])) << row[k];
      out << (k + 1 < row.size() ? "  " : "");
    }
    out << '\n';
  }
  for (const auto& g : r.groups) {
    if (!g.error.empty()) out << g.name << ": error: " << g.error << '\n';
    for (const auto& w : g.witnesses) {
      out << g.name << ": " << w.check << ": " << w.kind;
      if (!w.elements.empty()) {
        out << " [";
        for (std::size_t k = 0; k < w.elements.size(); ++k) out << (k ? ", " : "") << w.elements[k];
        out << ']';
      }
      out << '\n';
    }
  }
  out << r.groups.size() << " groups, " << r.violations() << " violations, " << r.errors()
      << " errors\n";
  return out.str();
}

/// format is "text" or "json"; anything else throws std::invalid_argument.
inline std::string render(const SuiteReport& r, const std::string& format) {
  if (format == "text") return render_text(r);
  if (format == "json") return to_json(r).dump(2) + "\n";
  throw std::invalid_argument("unknown report format '" + format + "'");
}

}  // namespace pgroup
