#include <gtest/gtest.h>

#include "pgroup/suite.hpp"
#include "test_support.hpp"

using namespace pgroup;
using namespace testing_support;

namespace {

struct Advertised {
  FamilySpec spec;
  std::uint64_t order, exponent;
  int nil_class, d;
};

FamilySpec fam(const std::string& f, int p, int e, std::vector<int> type = {}, std::string variant = {}) {
  FamilySpec s;
  s.family = f;
  s.p = p;
  s.e = e;
  s.type = std::move(type);
  s.variant = std::move(variant);
  return s;
}

const std::vector<Advertised>& advertised() {
  static const std::vector<Advertised> table{
      {fam("cyclic", 3, 1), 3, 3, 1, 1},
      {fam("cyclic", 5, 3), 125, 125, 1, 1},
      {fam("abelian", 3, 0, {2, 1}), 27, 9, 1, 2},
      {fam("abelian", 2, 0, {3, 1, 1}), 32, 8, 1, 3},
      {fam("elementary_abelian", 3, 3), 27, 3, 1, 3},
      {fam("heisenberg", 3, 1), 27, 3, 2, 2},
      {fam("heisenberg", 3, 2), 729, 9, 2, 2},
      {fam("heisenberg", 5, 1), 125, 5, 2, 2},
      {fam("extraspecial", 3, 0, {}, "exp-p"), 27, 3, 2, 2},
      {fam("extraspecial", 5, 0, {}, "exp-p2"), 125, 25, 2, 2},
      {fam("modular", 3, 3), 27, 9, 2, 2},
      {fam("modular", 3, 4), 81, 27, 2, 2},
      {fam("modular", 2, 4), 16, 8, 2, 2},
      {fam("wreath", 3, 0), 81, 9, 3, 2},
      {fam("dihedral", 2, 3), 8, 4, 2, 2},
      {fam("dihedral", 2, 4), 16, 8, 3, 2},
      {fam("quaternion", 2, 3), 8, 4, 2, 2},
      {fam("quaternion", 2, 4), 16, 8, 3, 2},
      {fam("semidihedral", 2, 4), 16, 8, 3, 2},
  };
  return table;
}

Corpus corpus_of(const std::string& text) { return parse_corpus(text, source_dir() + "/corpus"); }

SuiteOptions only(const std::string& checks, unsigned jobs = 1) {
  SuiteOptions o;
  o.checks = parse_checks(checks);
  o.jobs = jobs;
  return o;
}

}  // namespace

// ---- families ---------------------------------------------------------------------------

TEST(Families, AdvertisedInvariants) {
  for (const Advertised& a : advertised()) {
    const BuiltGroup b = build_family(a.spec);
    if (b.has_presentation()) {
      EXPECT_TRUE(check_consistency(b.presentation()).consistent) << b.name;
    }
    const GroupHandle G = make_handle(b);
    EXPECT_EQ(G.size(), a.order) << b.name;
    EXPECT_EQ(exponent(G), a.exponent) << b.name;
    EXPECT_EQ(nilpotency_class(G), a.nil_class) << b.name;
    EXPECT_EQ(frattini_and_rank(G).rank, a.d) << b.name;
  }
}

TEST(Families, HeisenbergThreeIsTheQuotedPresentation) {
  // a = g1, b = g2, c = g3 with [b,a] = c and nothing else.
  const PcPresentation P = build_family(fam("heisenberg", 3, 1)).presentation();
  std::string quoted = print_presentation(parse_presentation(read_text_file(source_dir() + "/presentations/g1.pcp")));
  quoted.replace(quoted.find("G1"), 2, "heisenberg(3,1)");
  EXPECT_EQ(print_presentation(P), quoted);
}

TEST(Families, DisplayNames) {
  EXPECT_EQ(build_family(fam("heisenberg", 3, 2)).name, "heisenberg(3,2)");
  EXPECT_EQ(build_family(fam("abelian", 3, 0, {2, 1})).name, "C9xC3");
  EXPECT_EQ(build_family(fam("elementary_abelian", 3, 3)).name, "E3^3");
  EXPECT_EQ(build_family(fam("modular", 3, 3)).name, "M27");
  EXPECT_EQ(build_family(fam("wreath", 3, 0)).name, "C3wrC3");
  EXPECT_EQ(build_family(fam("semidihedral", 2, 4)).name, "SD16");
  FamilySpec named = fam("cyclic", 3, 2);
  named.name = "nine";
  EXPECT_EQ(build_family(named).name, "nine");
}

TEST(Families, InvalidParameters) {
  EXPECT_THROW(build_family(fam("cyclic", 4, 2)), PresentationError);
  EXPECT_THROW(build_family(fam("heisenberg", 2, 1)), PresentationError);
  EXPECT_THROW(build_family(fam("extraspecial", 3, 0, {}, "exp-p3")), PresentationError);
  EXPECT_THROW(build_family(fam("dihedral", 3, 3)), PresentationError);
  EXPECT_THROW(build_family(fam("quaternion", 2, 2)), PresentationError);
  EXPECT_THROW(build_family(fam("modular", 2, 3)), PresentationError);
  EXPECT_THROW(build_family(fam("abelian", 3, 0)), PresentationError);
  EXPECT_THROW(build_family(fam("klein", 2, 2)), PresentationError);
}

TEST(Families, CyclicOfOrder125HasRps) {
  EXPECT_TRUE(has_regular_power_structure(make_handle(fam("cyclic", 5, 3))).overall);
}

TEST(Families, QuaternionTableAssociativeExhaustively) {
  const TableGroup T = build_family(fam("quaternion", 2, 3)).table();
  TableOptions opts;
  opts.exhaustive_assoc_limit = 4096;
  EXPECT_TRUE(T.verify_associative(opts));
  EXPECT_EQ(std::count(T.orders().begin(), T.orders().end(), 2u), 1);
}

TEST(Families, LargeGroupsUseTheStreamBackend) {
  const GroupHandle G = make_handle(fam("heisenberg", 3, 3));
  EXPECT_FALSE(G.table_backed());
  EXPECT_EQ(G.size(), 19683u);
  EXPECT_TRUE(make_handle(fam("heisenberg", 3, 2)).table_backed());
  EXPECT_FALSE(make_handle(fam("heisenberg", 3, 2), false).table_backed());
}

// ---- corpus -----------------------------------------------------------------------------

TEST(Corpus, ParsesFamiliesAndIncludes) {
  const Corpus c = corpus_of(
      "# comment\n"
      "family=cyclic p=3 e=2\n"
      "\n"
      "family=abelian p=3 type=2,1 name=A  # trailing comment\n"
      "include=../presentations/g1.pcp\n");
  ASSERT_EQ(c.entries.size(), 3u);
  EXPECT_EQ(c.entries[0].name(), "C9");
  EXPECT_EQ(c.entries[0].line, 2u);
  EXPECT_EQ(c.entries[1].name(), "A");
  EXPECT_EQ(c.entries[1].family->type, (std::vector<int>{2, 1}));
  EXPECT_EQ(c.entries[2].name(), "G1");
  EXPECT_FALSE(c.entries[2].family);
  EXPECT_EQ(c.entries[1].canonical(), "family=abelian p=3 e=0 type=2,1 name=A");
}

TEST(Corpus, AliasesForTheSizeParameter) {
  const Corpus c = corpus_of("family=modular p=3 k=4\nfamily=elementary_abelian p=3 n=2\n");
  EXPECT_EQ(c.entries[0].family->e, 4);
  EXPECT_EQ(c.entries[1].family->e, 2);
}

TEST(Corpus, ErrorsCarryLineAndColumn) {
  auto expect_error = [](const std::string& text, std::size_t line, std::size_t col, const std::string& needle) {
    try {
      corpus_of(text);
      ADD_FAILURE() << "expected ParseError for: " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text;
      EXPECT_EQ(e.column(), col) << text;
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  expect_error("family=cyclic p=3 e=1\nfamily=cyclic q=3\n", 2, 15, "unknown key");
  expect_error("family=cyclic p=x e=1\n", 1, 17, "");
  expect_error("p=3 e=1\n", 1, 1, "family= or include=");
  expect_error("family=cyclic include=../presentations/g1.pcp\n", 1, 15, "stand alone");
  expect_error("include=../presentations/nope.pcp\n", 1, 9, "cannot open");
  expect_error("family\n", 1, 1, "key=value");
}

TEST(Corpus, IncludeParseErrorsAreWrapped) {
  try {
    parse_corpus("include=bad_weighting.pcp\n", source_dir() + "/tests/data");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("bad_weighting.pcp"), std::string::npos);
  }
}

TEST(Corpus, DigestTracksContent) {
  const Corpus a = corpus_of("family=cyclic p=3 e=2\n");
  const Corpus b = corpus_of("# different comments\nfamily=cyclic   p=3 e=2\n");
  const Corpus c = corpus_of("family=cyclic p=3 e=3\n");
  EXPECT_EQ(a.digest(), b.digest());
  EXPECT_NE(a.digest(), c.digest());
  EXPECT_EQ(a.digest().size(), 16u);
}

TEST(Corpus, DefaultCorpusShape) {
  const Corpus c = load_corpus(source_dir() + "/corpus/default.cfg");
  EXPECT_GE(c.entries.size(), 10u);
  std::set<std::string> families;
  for (const auto& e : c.entries) {
    const BuiltGroup b = build_entry(e);
    const GroupHandle G = make_handle(b);
    EXPECT_LE(G.size(), 729u) << b.name;
    if (e.family) families.insert(e.family->family);
  }
  for (const char* f : {"cyclic", "abelian", "heisenberg", "modular", "extraspecial", "dihedral", "quaternion"})
    EXPECT_TRUE(families.count(f)) << f;
}

// ---- checks selection ----------------------------------------------------------------------

TEST(Checks, ParseSelection) {
  EXPECT_EQ(parse_checks("all"), check_names());
  EXPECT_EQ(parse_checks("hughes,rps,rps"), (std::vector<std::string>{"rps", "hughes"}));
  EXPECT_THROW(parse_checks("rps,nope"), std::invalid_argument);
  EXPECT_THROW(parse_checks("rps,"), std::invalid_argument);
  EXPECT_THROW(parse_checks(""), std::invalid_argument);
}

// ---- run_suite ------------------------------------------------------------------------------

TEST(Suite, EmptyCorpus) {
  const SuiteReport r = run_suite(Corpus{}, only("all"));
  EXPECT_TRUE(r.groups.empty());
  EXPECT_EQ(r.violations(), 0u);
  EXPECT_EQ(render(r, "text").substr(render(r, "text").rfind('\n', render(r, "text").size() - 2) + 1),
            "0 groups, 0 violations, 0 errors\n");
  EXPECT_EQ(to_json(r)["groups"].size(), 0u);
}

TEST(Suite, NegativeControlsFailRpsWithWitnesses) {
  const SuiteReport r = run_suite(load_corpus(source_dir() + "/corpus/controls.cfg"), only("rps"));
  ASSERT_EQ(r.groups.size(), 2u);
  const GroupResult* d8 = r.group("D8");
  const GroupResult* q8 = r.group("Q8");
  ASSERT_TRUE(d8 && q8);
  EXPECT_EQ(d8->verdict("rps")->status, status::fails);
  EXPECT_EQ(q8->verdict("rps")->status, status::fails);
  // D8 also fails cond3 with (4, 8); cond2 is reported first.
  ASSERT_EQ(d8->witnesses.size(), 2u);
  EXPECT_NE(d8->witnesses[0].kind.find("cond2 i=1"), std::string::npos);
  EXPECT_NE(d8->witnesses[1].kind.find("(4, 8)"), std::string::npos);
  EXPECT_NE(d8->witnesses[0].kind.find("order 4"), std::string::npos);
  ASSERT_EQ(d8->witnesses[0].elements.size(), 1u);
  EXPECT_EQ(d8->witnesses[0].elements[0].rfind("r", 0), 0u);
  ASSERT_EQ(q8->witnesses.size(), 1u);
  EXPECT_NE(q8->witnesses[0].kind.find("cond3 i=1"), std::string::npos);
  EXPECT_NE(q8->witnesses[0].kind.find("(4, 2)"), std::string::npos);
  EXPECT_EQ(r.violations(), 0u);
}

TEST(Suite, TextRenderShowsWitnessWords) {
  const SuiteReport r = run_suite(load_corpus(source_dir() + "/corpus/controls.cfg"), only("rps"));
  const std::string text = render(r, "text");
  EXPECT_NE(text.find("D8: rps: cond2 i=1"), std::string::npos) << text;
  EXPECT_NE(text.find("[r"), std::string::npos) << text;
  EXPECT_NE(text.find("2 groups, 0 violations, 0 errors"), std::string::npos);
  // Columns are aligned: the status column starts at the same offset in every row.
  std::istringstream in(text);
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(header.find("rps"), row1.find("fails"));
  EXPECT_EQ(header.find("rps"), row2.find("fails"));
}

TEST(Suite, UnknownFormatThrows) {
  EXPECT_THROW(render(SuiteReport{}, "xml"), std::invalid_argument);
}

TEST(Suite, DeterministicAcrossRunsAndJobCounts) {
  const Corpus c = load_corpus(source_dir() + "/corpus/default.cfg");
  const SuiteOptions serial = only("rps,powerful,regular,hughes,normal_abelian,lift");
  const SuiteOptions parallel = only("rps,powerful,regular,hughes,normal_abelian,lift", 4);
  const std::string a = render(run_suite(c, serial), "json");
  const std::string b = render(run_suite(c, serial), "json");
  const std::string d = render(run_suite(c, parallel), "json");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, d);
}

TEST(Suite, JsonRoundTripIsLossless) {
  SuiteOptions o = only("rps,powerful,hughes,burnside");
  o.timings = true;
  const SuiteReport r = run_suite(load_corpus(source_dir() + "/corpus/default.cfg"), o);
  const SuiteReport back = from_json(Json::parse(render(r, "json")));
  EXPECT_EQ(back, r);
  EXPECT_TRUE(r.groups.front().timings_ms);
}

TEST(Suite, JsonSchemaKeys) {
  const SuiteReport r = run_suite(load_corpus(source_dir() + "/corpus/controls.cfg"), only("rps,hughes"));
  const Json doc = to_json(r);
  for (const char* k : {"tool_version", "seed", "corpus_digest", "checks", "groups", "summary"})
    EXPECT_TRUE(doc.contains(k)) << k;
  const Json& g = doc["groups"][0];
  for (const char* k : {"name", "source", "prime", "order", "exponent", "class", "d", "verdicts", "witnesses",
                        "timings_ms", "error"})
    EXPECT_TRUE(g.contains(k)) << k;
  EXPECT_TRUE(g["timings_ms"].is_null());
  EXPECT_EQ(g["verdicts"]["hughes"]["status"], "consistent");
  EXPECT_EQ(g["verdicts"]["hughes"]["detail"], "index-p");
  EXPECT_EQ(doc["tool_version"], kToolVersion);
}

TEST(Suite, BuildFailureIsRecordedNotFatal) {
  const Corpus c = corpus_of("family=heisenberg p=2 e=1\nfamily=cyclic p=3 e=1\n");
  const SuiteReport r = run_suite(c, only("rps"));
  ASSERT_EQ(r.groups.size(), 2u);
  EXPECT_FALSE(r.groups[0].error.empty());
  EXPECT_TRUE(r.groups[0].verdicts.empty());
  EXPECT_EQ(r.groups[1].verdict("rps")->status, status::holds);
  EXPECT_EQ(r.errors(), 1u);
}

TEST(Suite, PreconditionsBecomeSkips) {
  const SuiteReport r = run_suite(load_corpus(source_dir() + "/corpus/controls.cfg"), only("burnside,lift,lemma42"));
  for (const auto& g : r.groups)
    for (const auto& v : g.verdicts) EXPECT_EQ(v.status, status::skipped) << g.name << " " << v.check;
}

TEST(Suite, DefaultCorpusAllChecksHasNoViolations) {
  SuiteOptions o = only("all", 4);
  const SuiteReport r = run_suite(load_corpus(source_dir() + "/corpus/default.cfg"), o);
  EXPECT_EQ(r.violations(), 0u) << render(r, "text");
  EXPECT_EQ(r.errors(), 0u) << render(r, "text");
  // Both verdict branches of every predicate are exercised.
  for (const char* check : {"rps", "powerful", "regular", "metacyclic", "pk_abelian"}) {
    bool holds = false, fails = false;
    for (const auto& g : r.groups) {
      const CheckOutcome* v = g.verdict(check);
      ASSERT_TRUE(v) << g.name;
      holds |= v->status == status::holds;
      fails |= v->status == status::fails;
    }
    EXPECT_TRUE(holds && fails) << check;
  }
}
