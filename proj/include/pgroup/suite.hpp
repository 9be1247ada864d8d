#pragma once

// run_suite: every selected predicate and theorem check over a corpus. A
// failure inside one check is recorded on that check and never aborts the
// suite; results are assembled in corpus order whatever the worker count.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "pgroup/corpus.hpp"
#include "pgroup/oracle.hpp"
#include "pgroup/report.hpp"
#include "pgroup/theorems.hpp"

namespace pgroup {

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "rps",     "powerful",       "regular",        "metacyclic",    "pk_abelian",
      "hall",    "hughes",         "burnside",       "powerful_facts", "lemma42",
      "normal_abelian", "cyclic_normal", "lift",      "oracle"};
  return names;
}

/// "all" or a comma-separated subset of check_names(); result in canonical order.
inline std::vector<std::string> parse_checks(std::string_view list) {
  if (list == "all") return check_names();
  std::set<std::string> wanted;
  std::string item;
  for (std::size_t k = 0; k <= list.size(); ++k) {
    if (k == list.size() || list[k] == ',') {
      if (item.empty()) throw std::invalid_argument("empty check name in '" + std::string(list) + "'");
      if (std::find(check_names().begin(), check_names().end(), item) == check_names().end())
        throw std::invalid_argument("unknown check '" + item + "'");
      wanted.insert(item);
      item.clear();
    } else {
      item += list[k];
    }
  }
  std::vector<std::string> out;
  for (const auto& c : check_names())
    if (wanted.count(c)) out.push_back(c);
  return out;
}

struct SuiteOptions {
  std::vector<std::string> checks = check_names();
  std::uint64_t seed = 0;
  bool timings = false;
  unsigned jobs = 1;
  Caps caps;
  /// Sampled subgroups per group for the lift survey above p^4.
  std::size_t lift_samples = 500;
  /// Pair checks (hall) run only up to this order.
  std::uint64_t hall_order_limit = 81;
};

namespace detail {

inline std::vector<std::string> labels_of(const GroupHandle& G, const std::vector<ElementId>& xs) {
  std::vector<std::string> out;
  for (ElementId x : xs) out.push_back(G.label(x));
  return out;
}

struct GroupContext {
  const GroupHandle& G;
  const BuiltGroup& built;
  const SuiteOptions& opts;
  GroupResult& out;
  // Filled lazily and shared between checks.
  std::optional<bool> rps, powerful;

  bool has_rps() {
    if (!rps) rps = has_regular_power_structure(G).overall;
    return *rps;
  }
  bool is_powerful_group() {
    if (!powerful) powerful = is_powerful(G).holds;
    return *powerful;
  }
  void witness(const std::string& check, std::string kind, const std::vector<ElementId>& xs) {
    out.witnesses.push_back(Witness{check, std::move(kind), labels_of(G, xs)});
  }
  CheckOutcome predicate(const std::string& check, const Verdict& v) {
    CheckOutcome o{check, v.holds ? status::holds : status::fails, v.detail, Json::object()};
    o.data["sampled"] = v.sampled;
    if (!v.holds) witness(check, v.witness.kind, v.witness.elements);
    return o;
  }
};

inline CheckOutcome run_rps(GroupContext& c) {
  const RpsReport r = has_regular_power_structure(c.G);
  c.rps = r.overall;
  CheckOutcome o{"rps", r.overall ? status::holds : status::fails, "", Json::object()};
  o.data["e"] = r.e;
  const char* names[] = {"cond1", "cond2", "cond3"};
  for (int which = 1; which <= 3; ++which) {
    const auto& conds = which == 1 ? r.cond1 : which == 2 ? r.cond2 : r.cond3;
    Json arr = Json::array();
    for (const auto& k : conds) arr.push_back(Json{{"i", k.i}, {"holds", k.holds}, {"left", k.left}, {"right", k.right}});
    o.data[names[which - 1]] = std::move(arr);
    const ConditionResult* f = r.first_failure(which);
    if (!f) continue;
    const std::string i = std::to_string(f->i);
    std::string kind;
    std::vector<ElementId> xs;
    if (which == 1) {
      kind = "cond1 i=" + i + ": element of the agemo that is not a p^" + i + "-th power";
    } else if (which == 2) {
      kind = "cond2 i=" + i + ": element of Omega_" + i + " of order " +
             std::to_string(f->witness ? c.G.order_of(*f->witness) : 0);
    } else {
      kind = "cond3 i=" + i + ": (|G:G^{p^" + i + "}|, |Omega_" + i + "|) = (" + std::to_string(f->left) +
             ", " + std::to_string(f->right) + ")";
    }
    if (f->witness && which != 3) xs.push_back(*f->witness);
    if (o.detail.empty()) o.detail = kind;
    c.witness("rps", kind, xs);
  }
  return o;
}

inline CheckOutcome run_pk_abelian(GroupContext& c) {
  const int k = std::max(0, exponent_log(c.G) - 1);
  const Verdict v = is_pk_abelian(c.G, k, PairOptions{729, 100'000, c.opts.seed});
  CheckOutcome o = c.predicate("pk_abelian", v);
  o.data["k"] = k;
  // Powerful groups of exponent p^e are p^{e-1}-abelian.
  if (!v.holds && c.is_powerful_group()) o.status = status::violation;
  return o;
}

inline CheckOutcome run_hall(GroupContext& c) {
  CheckOutcome o{"hall", status::consistent, "", Json::object()};
  if (c.G.size() > c.opts.hall_order_limit) {
    o.status = status::skipped;
    o.detail = "order above " + std::to_string(c.opts.hall_order_limit);
    return o;
  }
  for (int n = 1; n <= 2; ++n) {
    const Verdict v = hall_congruence_all_pairs(c.G, n);
    if (!v.holds) {
      o.status = status::violation;
      o.detail = "n=" + std::to_string(n) + ": " + v.detail;
      c.witness("hall", v.witness.kind, v.witness.elements);
      break;
    }
  }
  o.data["n"] = Json::array({1, 2});
  return o;
}

inline CheckOutcome run_hughes(GroupContext& c) {
  const HughesVerdict h = hughes_verdict(c.G, c.has_rps());
  CheckOutcome o{"hughes", status::consistent, to_string(h.classification), Json::object()};
  o.data["classification"] = to_string(h.classification);
  o.data["index"] = h.index;
  o.data["hughes_order"] = h.hughes_subgroup.size();
  o.data["rps"] = h.rps;
  bool ok = h.refinement_holds;
  if (c.G.prime() <= 3 && h.classification == HughesClass::Counterexample) ok = false;
  if (!ok) {
    o.status = status::violation;
    c.witness("hughes", "H_p of order " + std::to_string(h.hughes_subgroup.size()) + " classified " +
                            to_string(h.classification),
              h.hughes_subgroup.generators);
  }
  return o;
}

inline CheckOutcome run_burnside(GroupContext& c) {
  CheckOutcome o{"burnside", status::consistent, "", Json::object()};
  if (!c.has_rps()) {
    o.status = status::skipped;
    o.detail = "no regular power structure";
    return o;
  }
  // n_{(2,3)} = 27 is the only constant available.
  const int d = frattini_and_rank(c.G).rank;
  std::optional<std::uint64_t> n;
  if (c.G.prime() == 3 && d == 2) n = 27;
  const BurnsideChainReport r = burnside_chain_verify(c.G, n);
  o.data = Json{{"e", r.e},
                {"top_quotient_order", r.top_quotient_order},
                {"top_agemo_order", r.top_agemo_order},
                {"decomposition", r.decomposition},
                {"containment", r.containment},
                {"omega1_order", r.omega1_order},
                {"frattini_quotient_order", r.frattini_quotient_order},
                {"omega_index", r.omega_index},
                {"derived_bound", r.derived_bound},
                {"derived_bound_holds", r.derived_bound_holds}};
  if (n) {
    o.data["n_const"] = *n;
    o.data["bound_holds"] = r.bound_holds;
    o.data["sharp"] = r.sharp;
  }
  o.detail = "|G| = " + std::to_string(r.order) + " <= " + std::to_string(r.derived_bound) +
             (r.sharp ? ", sharp for n = 27" : "");
  if (!r.all_hold()) {
    o.status = status::violation;
    c.witness("burnside", "proof chain step failed", {});
  }
  return o;
}

inline CheckOutcome run_powerful_facts(GroupContext& c) {
  CheckOutcome o{"powerful_facts", status::consistent, "", Json::object()};
  if (!c.is_powerful_group()) {
    o.status = status::skipped;
    o.detail = "not powerful";
    return o;
  }
  const PowerfulFacts f = powerful_facts_check(c.G);
  o.data["checked"] = f.checked;
  o.detail = std::to_string(f.checked) + " statements";
  if (!f.holds) {
    o.status = status::violation;
    for (const auto& [what, w] : f.failures) c.witness("powerful_facts", what, {w});
  }
  return o;
}

inline CheckOutcome run_lemma42(GroupContext& c) {
  CheckOutcome o{"lemma42", status::consistent, "", Json::object()};
  if (!c.is_powerful_group()) {
    o.status = status::skipped;
    o.detail = "not powerful";
    return o;
  }
  const auto ab = find_lemma42_pair(c.G);
  if (!ab) {
    o.status = status::skipped;
    o.detail = "no generating pair with G^p = <a^p>";
    return o;
  }
  const ElementId cc = lemma42_construct(c.G, ab->first, ab->second);
  o.data = Json{{"a", c.G.label(ab->first)}, {"b", c.G.label(ab->second)}, {"c", c.G.label(cc)}};
  o.detail = "c = " + c.G.label(cc);
  return o;
}

inline CheckOutcome run_normal_abelian(GroupContext& c) {
  NormalAbelianOptions na;
  na.seed = c.opts.seed;
  const NormalAbelianReport r = normal_abelian_cyclic_check(c.G, na);
  CheckOutcome o{"normal_abelian", status::consistent, "", Json::object()};
  o.data = Json{{"sampled", r.sampled},
                {"subgroups_examined", r.subgroups_examined},
                {"normal_abelian", r.normal_abelian.size()},
                {"hypothesis", r.hypothesis},
                {"cyclic", r.group_cyclic}};
  o.detail = std::string(r.hypothesis ? "hypothesis holds" : "hypothesis fails") +
             (r.group_cyclic ? ", cyclic" : ", not cyclic");
  if (r.non_cyclic_witness) c.witness("normal_abelian", "normal abelian non-cyclic subgroup",
                                      r.non_cyclic_witness->generators);
  if (!r.theorem_consistent) o.status = status::violation;
  return o;
}

inline CheckOutcome run_cyclic_normal(GroupContext& c) {
  CheckOutcome o{"cyclic_normal", status::consistent, "", Json::object()};
  std::set<std::vector<ElementId>> seen;
  std::size_t tested = 0;
  for (ElementId x = 0; x < c.G.size(); ++x) {
    ElementSet N = closure(c.G, {x});
    if (!seen.insert(N.members).second || !is_normal(c.G, N)) continue;
    ++tested;
    const Verdict v = cyclic_normal_commutator_check(c.G, N);
    if (!v.holds) {
      o.status = status::violation;
      o.detail = "N = <" + c.G.label(x) + ">: " + v.detail;
      c.witness("cyclic_normal", v.witness.kind, v.witness.elements);
      break;
    }
  }
  o.data["cyclic_normal_subgroups"] = tested;
  if (o.detail.empty()) o.detail = std::to_string(tested) + " cyclic normal subgroups";
  return o;
}

inline CheckOutcome run_lift(GroupContext& c) {
  CheckOutcome o{"lift", status::consistent, "", Json::object()};
  if (!c.is_powerful_group()) {
    o.status = status::skipped;
    o.detail = "not powerful";
    return o;
  }
  RankSurveyOptions ro;
  ro.samples = c.opts.lift_samples;
  ro.seed = c.opts.seed;
  ro.certificates = true;
  const RankSurvey s = subgroup_rank_survey(c.G, ro);
  o.data = Json{{"exhaustive", s.exhaustive},
                {"subgroups", s.subgroups},
                {"certificates", s.certificates},
                {"d", s.d_group},
                {"max_rank", s.max_rank},
                {"violations", s.violations}};
  o.detail = "max d(H) = " + std::to_string(s.max_rank) + " over " + std::to_string(s.subgroups) +
             (s.exhaustive ? " subgroups" : " sampled subgroups");
  if (s.violations) o.status = status::violation;
  return o;
}

inline CheckOutcome run_oracle(GroupContext& c) {
  CheckOutcome o{"oracle", status::consistent, "", Json::object()};
  if (!c.built.has_presentation() || c.G.size() > 729) {
    o.status = status::skipped;
    o.detail = c.built.has_presentation() ? "order above 729" : "table-only group";
    return o;
  }
  const OracleComparison cmp = compare_backends(PcGroup::create(c.built.presentation()));
  o.data["compared"] = cmp.compared;
  o.detail = std::to_string(cmp.compared) + " results compared";
  if (!cmp.equal()) {
    o.status = status::violation;
    for (const auto& m : cmp.mismatches) c.witness("oracle", m, {});
  }
  return o;
}

inline CheckOutcome run_check(GroupContext& c, const std::string& check) {
  if (check == "rps") return run_rps(c);
  if (check == "powerful") {
    const Verdict v = is_powerful(c.G);
    c.powerful = v.holds;
    return c.predicate(check, v);
  }
  if (check == "regular") return c.predicate(check, is_regular(c.G, PairOptions{729, 100'000, c.opts.seed}));
  if (check == "metacyclic") return c.predicate(check, is_metacyclic(c.G));
  if (check == "pk_abelian") return run_pk_abelian(c);
  if (check == "hall") return run_hall(c);
  if (check == "hughes") return run_hughes(c);
  if (check == "burnside") return run_burnside(c);
  if (check == "powerful_facts") return run_powerful_facts(c);
  if (check == "lemma42") return run_lemma42(c);
  if (check == "normal_abelian") return run_normal_abelian(c);
  if (check == "cyclic_normal") return run_cyclic_normal(c);
  if (check == "lift") return run_lift(c);
  if (check == "oracle") return run_oracle(c);
  throw std::invalid_argument("unknown check '" + check + "'");
}

inline GroupResult run_group(const CorpusEntry& entry, const SuiteOptions& opts) {
  GroupResult out;
  out.name = entry.name();
  out.source = entry.family ? entry.canonical() : "include=" + entry.include_path;
  if (opts.timings) out.timings_ms.emplace();
  std::optional<BuiltGroup> built;
  GroupHandle G;
  try {
    built = build_entry(entry);
    G = make_handle(*built, true, opts.caps);
  } catch (const std::exception& e) {
    out.error = e.what();
    return out;
  }
  out.prime = G.prime();
  out.order = G.size();
  out.exponent = exponent(G);
  out.nil_class = nilpotency_class(G);
  out.d = frattini_and_rank(G).rank;
  GroupContext ctx{G, *built, opts, out, std::nullopt, std::nullopt};
  for (const auto& check : opts.checks) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckOutcome o;
    try {
      o = run_check(ctx, check);
    } catch (const TheoremViolation& e) {
      o = CheckOutcome{check, status::violation, e.what(), Json::object()};
      ctx.witness(check, e.what(), {});
    } catch (const PreconditionError& e) {
      o = CheckOutcome{check, status::skipped, e.what(), Json::object()};
    } catch (const std::exception& e) {
      o = CheckOutcome{check, status::error, e.what(), Json::object()};
    }
    out.verdicts.push_back(std::move(o));
    if (out.timings_ms) {
      const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
      (*out.timings_ms)[check] = dt.count();
    }
  }
  return out;
}

}  // namespace detail

inline SuiteReport run_suite(const Corpus& corpus, const SuiteOptions& opts = {}) {
  SuiteReport r;
  r.seed = opts.seed;
  r.corpus_digest = corpus.digest();
  r.checks = opts.checks;
  r.groups.resize(corpus.entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < corpus.entries.size();)
      r.groups[k] = detail::run_group(corpus.entries[k], opts);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(corpus.entries.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return r;
}

}  // namespace pgroup
