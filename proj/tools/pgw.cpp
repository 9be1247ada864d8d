// pgw: command-line front end for the p-group workbench.
//
//   pgw check <file.pcp> [--rps|--powerful|--regular|--metacyclic|--all]
//   pgw family <name> --p <p> --e <e> [--type 2,1] [--variant exp-p] [--emit <file.pcp>]
//   pgw verify --corpus <corpus.cfg> --checks <list> --seed <int> --out <report>
//   pgw hughes <file.pcp>
//   pgw burnside <file.pcp> [--nconst <int>]
//   pgw lift <file.pcp> --subgroup <word,word,...>
//
// Exit codes: 0 consistent, 1 theorem-contradicting result, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pgroup/suite.hpp"

namespace {

using namespace pgroup;

constexpr int kOk = 0;
constexpr int kContradiction = 1;
constexpr int kUsage = 2;

struct Loaded {
  std::shared_ptr<const PcGroup> pc;
  GroupHandle G;
};

Loaded load_group(const std::string& path) {
  PcPresentation P = parse_presentation(read_text_file(path));
  if (P.name.empty()) P.name = std::filesystem::path(path).stem().string();
  Loaded l;
  l.pc = PcGroup::create(std::move(P));
  const Caps caps;
  l.G = l.pc->order() <= caps.table ? GroupHandle::table_of(*l.pc) : GroupHandle::from_presentation(l.pc, caps);
  l.G.set_name(l.pc->presentation().name);
  return l;
}

void print_summary(const GroupHandle& G) {
  std::cout << G.name() << ": order " << G.size() << ", exponent " << exponent(G) << ", class "
            << nilpotency_class(G) << ", d " << frattini_and_rank(G).rank
            << (G.table_backed() ? "" : " (streaming)") << '\n';
}

void print_verdict(const GroupHandle& G, const Verdict& v) {
  std::cout << v.predicate << ": " << (v.holds ? "holds" : "fails") << (v.sampled ? " (sampled)" : "");
  if (!v.detail.empty()) std::cout << "  " << v.detail;
  std::cout << '\n';
  if (!v.holds && !v.witness.elements.empty()) {
    std::cout << "  witness (" << v.witness.kind << "):";
    for (ElementId x : v.witness.elements) std::cout << ' ' << G.label(x);
    std::cout << '\n';
  }
}

void print_rps(const GroupHandle& G, const RpsReport& r) {
  std::cout << "rps: " << (r.overall ? "holds" : "fails") << '\n';
  for (int which = 1; which <= 3; ++which) {
    const auto& conds = which == 1 ? r.cond1 : which == 2 ? r.cond2 : r.cond3;
    for (const auto& c : conds) {
      std::cout << "  cond" << which << " i=" << c.i << ": " << (c.holds ? "ok" : "FAIL") << " (" << c.left
                << ", " << c.right << ")";
      if (!c.holds && c.witness) std::cout << " witness " << G.label(*c.witness);
      std::cout << '\n';
    }
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

int cmd_check(const std::string& file, bool rps, bool powerful, bool regular, bool metacyclic, bool all) {
  const Loaded l = load_group(file);
  const GroupHandle& G = l.G;
  if (!(rps || powerful || regular || metacyclic)) all = true;
  print_summary(G);
  if (all || rps) print_rps(G, has_regular_power_structure(G));
  if (all || powerful) print_verdict(G, is_powerful(G));
  if (all || regular) print_verdict(G, is_regular(G));
  if (all || metacyclic) print_verdict(G, is_metacyclic(G));
  return kOk;
}

int cmd_family(const std::string& name, int p, int e, const std::string& type, const std::string& variant,
               const std::string& emit) {
  FamilySpec spec;
  spec.family = name;
  spec.p = p;
  spec.e = e;
  spec.variant = variant;
  for (const auto& t : split_list(type)) spec.type.push_back(std::stoi(t));
  const BuiltGroup built = build_family(spec);
  const GroupHandle G = make_handle(built);
  print_summary(G);
  std::cout << "rps: " << (has_regular_power_structure(G).overall ? "holds" : "fails")
            << ", powerful: " << (is_powerful(G).holds ? "holds" : "fails") << '\n';
  if (!emit.empty()) {
    if (!built.has_presentation()) {
      std::cerr << "error: " << name << " is a table-only family and has no presentation to emit\n";
      return kUsage;
    }
    std::ofstream out(emit);
    out << print_presentation(built.presentation());
    if (!out) {
      std::cerr << "error: cannot write " << emit << '\n';
      return kUsage;
    }
  }
  return kOk;
}

int cmd_verify(const std::string& corpus_path, const std::string& checks, std::uint64_t seed,
               const std::string& out_path, const std::string& format, bool timings, unsigned jobs) {
  SuiteOptions opts;
  opts.checks = parse_checks(checks);
  opts.seed = seed;
  opts.timings = timings;
  opts.jobs = jobs;
  const Corpus corpus = load_corpus(corpus_path);
  const SuiteReport r = run_suite(corpus, opts);
  const std::string doc = render(r, format);
  if (out_path.empty() || out_path == "-") {
    std::cout << doc;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << doc;
    if (!out) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return kUsage;
    }
    std::cout << render_text(r);
  }
  return r.violations() || r.errors() ? kContradiction : kOk;
}

int cmd_hughes(const std::string& file) {
  const Loaded l = load_group(file);
  const HughesVerdict v = hughes_verdict(l.G);
  print_summary(l.G);
  std::cout << "H_p order " << v.hughes_subgroup.size() << ", index " << v.index << ", classification "
            << to_string(v.classification) << (v.rps ? ", rps" : ", not rps") << '\n';
  bool ok = v.refinement_holds;
  if (l.G.prime() <= 3 && v.classification == HughesClass::Counterexample) ok = false;
  if (!ok) std::cout << "CONTRADICTION: classification disagrees with the theorem\n";
  return ok ? kOk : kContradiction;
}

int cmd_burnside(const std::string& file, std::optional<std::uint64_t> nconst) {
  const Loaded l = load_group(file);
  print_summary(l.G);
  const BurnsideChainReport r = burnside_chain_verify(l.G, nconst);
  auto yn = [](bool b) { return b ? "ok" : "FAIL"; };
  std::cout << "e = " << r.e << '\n'
            << "decomposition |G| = " << r.top_quotient_order << " * " << r.top_agemo_order << ": "
            << yn(r.decomposition) << '\n'
            << "G^{p^{e-1}} <= Omega_1: " << yn(r.containment) << '\n'
            << "|Omega_1| = " << r.omega1_order << ", |G:G^p| = " << r.frattini_quotient_order << ": "
            << yn(r.omega_index) << '\n'
            << "|G| <= |G:G^p|^e = " << r.derived_bound << ": " << yn(r.derived_bound_holds) << '\n';
  if (nconst)
    std::cout << "|G| <= " << *nconst << "^" << r.e << ": " << yn(r.bound_holds) << (r.sharp ? " (sharp)" : "")
              << '\n';
  return r.all_hold() ? kOk : kContradiction;
}

int cmd_lift(const std::string& file, const std::string& subgroup) {
  const Loaded l = load_group(file);
  const GroupHandle& G = l.G;
  std::vector<ElementId> gens;
  for (const auto& w : split_list(subgroup))
    gens.push_back(static_cast<ElementId>(l.pc->encode(parse_element(w, l.pc->presentation()))));
  const ElementSet H = closure(G, std::span<const ElementId>(gens));
  print_summary(G);
  const IndependenceCertificate c = lift_independent_set(G, H);
  std::cout << "|H| = " << H.size() << ", d(H) = " << c.r << ", d(G) = " << c.d_group << '\n';
  for (std::size_t i = 0; i < c.lifted.size(); ++i)
    std::cout << "  h" << i + 1 << " = " << G.label(c.subgroup_generators[i]) << " = ("
              << G.label(c.lifted[i]) << ")^{p^" << c.root_exponent[i] << "}\n";
  const bool ok = c.reverify(G);
  std::cout << "rank " << c.rank << ", certificate " << (ok ? "re-verified" : "FAILED re-verification") << '\n';
  return ok ? kOk : kContradiction;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-group workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string file;
  bool f_rps = false, f_powerful = false, f_regular = false, f_metacyclic = false, f_all = false;
  auto* check = app.add_subcommand("check", "predicates on a presentation file");
  check->add_option("file", file, "presentation file")->required();
  check->add_flag("--rps", f_rps, "regular power structure");
  check->add_flag("--powerful", f_powerful, "powerful");
  check->add_flag("--regular", f_regular, "regular");
  check->add_flag("--metacyclic", f_metacyclic, "metacyclic");
  check->add_flag("--all", f_all, "all predicates (default)");

  std::string fam_name, fam_type, fam_variant, fam_emit;
  int fam_p = 0, fam_e = 0;
  auto* family = app.add_subcommand("family", "construct and report a builtin family");
  family->add_option("name", fam_name, "family name")->required()->check(CLI::IsMember(family_names()));
  family->add_option("--p", fam_p, "prime")->required();
  family->add_option("--e", fam_e, "size parameter");
  family->add_option("--type", fam_type, "abelian type, e.g. 2,1");
  family->add_option("--variant", fam_variant, "extraspecial variant: exp-p or exp-p2");
  family->add_option("--emit", fam_emit, "write the presentation to this file");

  std::string corpus_path, checks = "all", out_path, format = "json";
  std::uint64_t seed = 0;
  bool timings = false;
  unsigned jobs = 1;
  auto* verify = app.add_subcommand("verify", "run the suite over a corpus");
  verify->add_option("--corpus", corpus_path, "corpus config")->required();
  verify->add_option("--checks", checks, "'all' or a comma-separated list");
  verify->add_option("--seed", seed, "sampling seed");
  verify->add_option("--out", out_path, "report path ('-' for stdout)");
  verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  verify->add_flag("--timings", timings, "record per-check timings (reports are then not reproducible)");
  verify->add_option("--jobs", jobs, "worker threads");

  auto* hughes = app.add_subcommand("hughes", "Hughes subgroup and classification");
  hughes->add_option("file", file, "presentation file")->required();

  std::optional<std::uint64_t> nconst;
  auto* burnside = app.add_subcommand("burnside", "order bound and its proof chain");
  burnside->add_option("file", file, "presentation file")->required();
  burnside->add_option("--nconst", nconst, "n_(d,p), e.g. 27 for d = 2, p = 3");

  std::string subgroup;
  auto* lift = app.add_subcommand("lift", "independence certificate for a subgroup");
  lift->add_option("file", file, "presentation file")->required();
  lift->add_option("--subgroup", subgroup, "generators as normal words, comma-separated")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(file, f_rps, f_powerful, f_regular, f_metacyclic, f_all);
    if (*family) return cmd_family(fam_name, fam_p, fam_e, fam_type, fam_variant, fam_emit);
    if (*verify) return cmd_verify(corpus_path, checks, seed, out_path, format, timings, jobs);
    if (*hughes) return cmd_hughes(file);
    if (*burnside) return cmd_burnside(file, nconst);
    if (*lift) return cmd_lift(file, subgroup);
  } catch (const TheoremViolation& e) {
    std::cerr << "CONTRADICTION: " << e.what() << '\n';
    return kContradiction;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
