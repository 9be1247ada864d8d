#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "pgroup/corpus.hpp"
#include "test_support.hpp"

using namespace pgroup;
using namespace testing_support;

namespace {

const char* kG1 = R"(# order 27, exponent 3
group p=3 n=3 name=G1
[g2,g1] = g3
)";

std::shared_ptr<const PcGroup> family_group(const std::string& f, int p, int e, std::vector<int> type = {}) {
  FamilySpec s;
  s.family = f;
  s.p = p;
  s.e = e;
  s.type = std::move(type);
  return PcGroup::create(build_family(s).presentation());
}

Exponents ex(std::initializer_list<int> v) { return Exponents(v); }

}  // namespace

// ---- parse_presentation ------------------------------------------------------

TEST(Parse, HeisenbergOrder27) {
  const PcPresentation P = parse_presentation(kG1);
  EXPECT_EQ(P.prime, 3);
  EXPECT_EQ(P.ngens, 3);
  EXPECT_EQ(P.name, "G1");
  EXPECT_EQ(P.commutator(1, 0), ex({0, 0, 1}));
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(is_trivial(P.power(i)));
  EXPECT_TRUE(is_trivial(P.commutator(2, 0)));
  EXPECT_TRUE(is_trivial(P.commutator(2, 1)));
  EXPECT_EQ(PcGroup::create(P)->order(), 27u);
}

TEST(Parse, BareCyclicHeader) {
  const PcPresentation P = parse_presentation("group p=5 n=1");
  EXPECT_EQ(P.prime, 5);
  EXPECT_EQ(P.ngens, 1);
  EXPECT_EQ(PcGroup::create(P)->order(), 5u);
}

TEST(Parse, ReversedCommutatorIsWeightingError) {
  try {
    parse_presentation("group p=3 n=2\n[g1,g2] = id\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("weighting"), std::string::npos);
  }
}

TEST(Parse, UnweightedCommutatorWordRejected) {
  // [g2,g1] = g2 mentions an index that is not > 2.
  EXPECT_THROW(parse_presentation("group p=3 n=2\n[g2,g1] = g2\n"), ParseError);
}

TEST(Parse, UnweightedPowerWordRejected) {
  try {
    parse_presentation("group p=3 n=2\ng2^3 = g1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 8u);
  }
}

TEST(Parse, NonPrime) {
  try {
    parse_presentation("group p=4 n=1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 9u);
    EXPECT_NE(std::string(e.what()).find("not prime"), std::string::npos);
  }
}

TEST(Parse, RelativeOrderOtherThanP) {
  try {
    parse_presentation("group p=3 n=2\ng1^9 = g2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("relative order 9"), std::string::npos);
  }
  // Writing the prime numerically is fine.
  EXPECT_NO_THROW(parse_presentation("group p=3 n=2\ng1^3 = g2\n"));
}

TEST(Parse, SyntaxErrorsCarryPositions) {
  try {
    parse_presentation("group p=3 n=2\n\n[g2 g1] = id\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 5u);
  }
  EXPECT_THROW(parse_presentation("grp p=3 n=1"), ParseError);
  EXPECT_THROW(parse_presentation("group p=3 n=2\ng3^p = id\n"), ParseError);
  EXPECT_THROW(parse_presentation("group p=3 n=2\ng1^p = g2^3\n"), ParseError);
  EXPECT_THROW(parse_presentation("group p=3 n=3\ng1^p = g3*g2\n"), ParseError);
  EXPECT_THROW(parse_presentation("group p=3 n=2\ng1^p = g2\ng1^p = id\n"), ParseError);
  EXPECT_THROW(parse_presentation("group p=3 n=3\n[g2,g1] = g3 junk\n"), ParseError);
  EXPECT_THROW(parse_presentation(""), ParseError);
}

TEST(Parse, CommentsAndDefaults) {
  const PcPresentation P = parse_presentation("# header comment\ngroup p=2 n=2 # trailing\n\ng1^2 = g2 # C4\n");
  EXPECT_EQ(P.power(0), ex({0, 1}));
  EXPECT_TRUE(is_trivial(P.power(1)));
  EXPECT_TRUE(is_trivial(P.commutator(1, 0)));
}

TEST(Parse, RoundTripOnFamiliesAndFiles) {
  std::vector<PcPresentation> all;
  for (int e = 1; e <= 3; ++e) all.push_back(build_family({"heisenberg", 3, e, {}, {}, ""}).presentation());
  all.push_back(build_family({"modular", 3, 4, {}, {}, ""}).presentation());
  all.push_back(build_family({"modular", 2, 5, {}, {}, ""}).presentation());
  all.push_back(build_family({"wreath", 5, 0, {}, {}, ""}).presentation());
  all.push_back(build_family({"abelian", 3, 0, {3, 2, 1}, {}, ""}).presentation());
  all.push_back(build_family({"elementary_abelian", 2, 0, {}, {}, ""}).presentation());
  for (const char* f : {"g1.pcp", "c9.pcp", "m27.pcp", "c27xc3.pcp"})
    all.push_back(parse_presentation(read_text_file(source_dir() + "/presentations/" + f)));
  for (const auto& P : all) {
    const std::string text = print_presentation(P);
    const PcPresentation Q = parse_presentation(text);
    EXPECT_EQ(P, Q) << text;
    EXPECT_EQ(print_presentation(Q), text);
  }
}

TEST(Parse, CanonicalPrinterOmitsTrivialRules) {
  const std::string text = print_presentation(parse_presentation(kG1));
  EXPECT_EQ(text, "group p=3 n=3 name=G1\n[g2,g1] = g3\n");
}

TEST(Parse, ElementWords) {
  const PcPresentation P = parse_presentation(kG1);
  EXPECT_EQ(parse_element("g1^2*g3", P), ex({2, 0, 1}));
  EXPECT_EQ(parse_element("id", P), ex({0, 0, 0}));
  EXPECT_THROW(parse_element("g4", P), ParseError);
  EXPECT_THROW(parse_element("g1^3", P), ParseError);
}

// ---- check_consistency ---------------------------------------------------------

TEST(Consistency, G1Passes) { EXPECT_TRUE(check_consistency(parse_presentation(kG1)).consistent); }

TEST(Consistency, C9ChainPasses) {
  EXPECT_TRUE(check_consistency(parse_presentation("group p=3 n=2\ng1^3 = g2\n")).consistent);
}

TEST(Consistency, DetectsPowerOverlapFailure) {
  // g1 commutes with g1^3 = g2, yet [g2,g1] = g3.
  const auto v = check_consistency(parse_presentation("group p=3 n=3\ng1^3 = g2\n[g2,g1] = g3\n"));
  EXPECT_FALSE(v.consistent);
  EXPECT_FALSE(v.failing_test.empty());
  EXPECT_THROW(PcGroup::create(parse_presentation("group p=3 n=3\ng1^3 = g2\n[g2,g1] = g3\n")),
               PresentationError);
}

TEST(Consistency, AgreesWithExhaustiveAssociativity) {
  const char* sources[] = {
      "group p=3 n=3\ng1^3 = g2\n[g2,g1] = g3\n",
      "group p=3 n=4\n[g2,g1] = g3\n[g3,g1] = g4\n[g3,g2] = g4\n",
      "group p=3 n=4\n[g2,g1] = g3\n[g3,g1] = g4\n",
      "group p=2 n=3\ng1^2 = g3\ng2^2 = g3\n[g2,g1] = g3\n",
      "group p=2 n=3\ng1^2 = g2\n[g2,g1] = g3\n",
      "group p=3 n=3\ng2^3 = g3\n[g2,g1] = g3\n",
  };
  int inconsistent = 0;
  for (const char* src : sources) {
    const PcPresentation P = parse_presentation(src);
    const auto v = check_consistency(P);
    const auto G = PcGroup::create(P, {}, false);
    const std::uint64_t N = G->order();
    bool assoc = true;
    for (std::uint64_t a = 0; a < N && assoc; ++a)
      for (std::uint64_t b = 0; b < N && assoc; ++b)
        for (std::uint64_t c = 0; c < N && assoc; ++c) {
          const Exponents x = G->decode(a), y = G->decode(b), z = G->decode(c);
          assoc = G->mul(G->mul(x, y), z) == G->mul(x, G->mul(y, z));
        }
    EXPECT_EQ(v.consistent, assoc) << src;
    inconsistent += !v.consistent;
  }
  EXPECT_GE(inconsistent, 2);
}

TEST(Consistency, AllFamilyPresentationsPass) {
  for (const auto& name : family_names())
    for (int p : {2, 3, 5})
      for (int e = 1; e <= 4; ++e) {
        FamilySpec s{name, p, e, {}, {}, ""};
        if (name == "abelian") s.type = {e, 1};
        if (name == "extraspecial") s.variant = e % 2 ? "exp-p" : "exp-p2";
        std::optional<BuiltGroup> b;
        try {
          b = build_family(s);
        } catch (const PresentationError&) {
          continue;
        }
        if (b->has_presentation()) {
          EXPECT_TRUE(check_consistency(b->presentation()).consistent) << b->name;
        }
      }
}

// ---- collect / multiply / inverse / power ---------------------------------------

TEST(Collect, BaEqualsAbc) {
  const auto G = PcGroup::create(parse_presentation(kG1));
  const std::vector<Letter> word{{1, 1}, {0, 1}};
  EXPECT_EQ(collect(word, *G).exponents(), ex({1, 1, 1}));
  // Matrix oracle: B A = A B C with C = [B, A].
  const Model M = heisenberg_model(3, 1);
  EXPECT_EQ(M(M.pc_images[1], M.pc_images[0]), model_image(M, ex({1, 1, 1})));
}

TEST(Collect, InverseCancels) {
  for (auto G : {family_group("heisenberg", 3, 2), family_group("modular", 2, 5), family_group("wreath", 3, 0)})
    for (int i = 0; i < G->ngens(); ++i) {
      const std::vector<Letter> word{{i, 1}, {i, -1}};
      EXPECT_TRUE(collect(word, *G).is_identity());
    }
}

TEST(Collect, ExponentReducedModOrder) {
  const auto C3 = PcGroup::create(parse_presentation("group p=3 n=1"));
  const std::vector<Letter> word{{0, 4}};
  EXPECT_EQ(collect(word, *C3).exponents(), ex({1}));
}

TEST(Collect, OutOfRangeGenerator) {
  const auto G = PcGroup::create(parse_presentation(kG1));
  const std::vector<Letter> word{{3, 1}};
  EXPECT_THROW(collect(word, *G), std::out_of_range);
}

TEST(Collect, BudgetExceededIsAnError) {
  const auto G = PcGroup::create(family_group("heisenberg", 3, 2)->presentation(), CollectOptions{100}, false);
  std::vector<Letter> word;
  for (int t = 0; t < 300; ++t) word.push_back({t % 6, 1 + t % 2});
  EXPECT_THROW(collect(word, *G), BudgetExceeded);
}

TEST(Collect, StatsReported) {
  const auto G = family_group("heisenberg", 3, 2);
  CollectionStats stats;
  const std::vector<Letter> word{{3, 2}, {0, 2}, {4, 1}, {1, 1}};
  collect(word, *G, &stats);
  EXPECT_GT(stats.steps, 0u);
  EXPECT_GT(stats.max_stack_depth, 0u);
}

TEST(Arithmetic, MultiplyBA) {
  const auto G = PcGroup::create(parse_presentation(kG1));
  EXPECT_EQ(multiply(G->generator(1), G->generator(0)).exponents(), ex({1, 1, 1}));
}

TEST(Arithmetic, PowerOfIdentityAndPowerRule) {
  const auto G = PcGroup::create(parse_presentation(kG1));
  EXPECT_TRUE(power(G->identity(), 1'000'000).is_identity());
  const auto C9 = PcGroup::create(parse_presentation("group p=3 n=2\ng1^3 = g2\n"));
  EXPECT_EQ(power(C9->generator(0), 3).exponents(), ex({0, 1}));
  EXPECT_EQ(power(C9->generator(0), -1).exponents(), ex({2, 2}));
}

TEST(Arithmetic, MixedPresentationsRejected) {
  const auto G = PcGroup::create(parse_presentation(kG1));
  const auto H = PcGroup::create(parse_presentation(kG1));
  EXPECT_THROW(multiply(G->generator(0), H->generator(0)), PresentationError);
}

TEST(Arithmetic, InverseAndNegativePowers) {
  const auto G = family_group("modular", 3, 4);
  for (const Element& x : enumerate_elements(*G)) {
    EXPECT_TRUE(multiply(x, inverse(x)).is_identity());
    EXPECT_TRUE(multiply(inverse(x), x).is_identity());
    EXPECT_EQ(power(x, -2), inverse(power(x, 2)));
  }
}

// ---- element_order / enumerate_elements ----------------------------------------------

TEST(Order, PaperExamples) {
  const auto G1 = family_group("heisenberg", 3, 1);
  const auto G2 = family_group("heisenberg", 3, 2);
  EXPECT_EQ(element_order(G1->generator(0)), 3);
  EXPECT_EQ(element_order(G1->identity()), 1);
  EXPECT_EQ(element_order(G2->generator(0)), 9);
  const Model M = heisenberg_model(3, 2);
  EXPECT_EQ(naive_order(M, M.pc_images[0]), 9u);
}

TEST(Enumerate, CountsAndOrder) {
  EXPECT_EQ(enumerate_elements(*PcGroup::create(parse_presentation("group p=3 n=1"))).size(), 3u);
  const auto G1 = PcGroup::create(parse_presentation(kG1));
  const auto all = enumerate_elements(*G1);
  ASSERT_EQ(all.size(), 27u);
  EXPECT_EQ(all[1].exponents(), ex({0, 0, 1}));
  EXPECT_EQ(all[26].exponents(), ex({2, 2, 2}));
  for (std::size_t k = 1; k < all.size(); ++k) EXPECT_LT(all[k - 1].exponents(), all[k].exponents());
  EXPECT_THROW(enumerate_elements(*family_group("heisenberg", 3, 3), 10'000), CapExceeded);
  EXPECT_EQ(enumerate_elements(*family_group("heisenberg", 3, 3)).size(), 19683u);
}

// ---- the collector against concrete models -------------------------------------------

namespace {

void expect_isomorphic(const PcGroup& G, const Model& M) {
  ASSERT_EQ(G.order(), M.n);
  const auto phi = pc_to_model(G, M);
  std::vector<char> hit(M.n, 0);
  for (ElementId x : phi) hit[x] = 1;
  ASSERT_TRUE(std::all_of(hit.begin(), hit.end(), [](char c) { return c; })) << "map is not onto";
  for (std::uint64_t a = 0; a < G.order(); ++a) {
    const Exponents x = G.decode(a);
    for (std::uint64_t b = 0; b < G.order(); ++b) {
      const std::uint64_t c = G.encode(G.mul(x, G.decode(b)));
      ASSERT_EQ(phi[c], M(phi[a], phi[b])) << G.presentation().name << ": " << format_word(x) << " * "
                                           << format_word(G.decode(b));
    }
  }
}

}  // namespace

TEST(Oracle, HeisenbergMatchesMatrices) {
  expect_isomorphic(*family_group("heisenberg", 3, 1), heisenberg_model(3, 1));
  expect_isomorphic(*family_group("heisenberg", 3, 2), heisenberg_model(3, 2));
  expect_isomorphic(*family_group("heisenberg", 5, 1), heisenberg_model(5, 1));
}

TEST(Oracle, ModularMatchesAffineMaps) {
  expect_isomorphic(*family_group("modular", 3, 3), modular_model(3, 3));
  expect_isomorphic(*family_group("modular", 3, 4), modular_model(3, 4));
  expect_isomorphic(*family_group("modular", 2, 4), modular_model(2, 4));
  expect_isomorphic(*family_group("modular", 5, 3), modular_model(5, 3));
}

TEST(Oracle, AbelianAndWreath) {
  expect_isomorphic(*family_group("abelian", 3, 0, {2, 1}), abelian_model(3, {2, 1}));
  expect_isomorphic(*family_group("abelian", 2, 0, {3, 1, 1}), abelian_model(2, {3, 1, 1}));
  expect_isomorphic(*family_group("wreath", 3, 0), wreath_model(3));
  expect_isomorphic(*family_group("wreath", 2, 0), wreath_model(2));
}

// ---- properties ---------------------------------------------------------------------

TEST(Property, NormalFormUniqueAcrossRandomWords) {
  std::mt19937_64 rng(7);
  for (auto [G, M] : {std::pair{family_group("heisenberg", 3, 2), heisenberg_model(3, 2)},
                      std::pair{family_group("modular", 3, 4), modular_model(3, 4)},
                      std::pair{family_group("wreath", 3, 0), wreath_model(3)}}) {
    const auto phi = pc_to_model(*G, M);
    std::uniform_int_distribution<int> gen(0, G->ngens() - 1), expo(-5, 5), len(1, 20);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<Letter> word;
      ElementId expect = 0;
      for (int k = len(rng); k > 0; --k) {
        const int g = gen(rng), e = expo(rng);
        word.push_back({g, e});
        const ElementId img = M.pc_images[static_cast<std::size_t>(g)];
        expect = M(expect, naive_power(M, e >= 0 ? img : M.inv[img], std::abs(e)));
      }
      EXPECT_EQ(phi[G->encode(G->collect_word(word))], expect);
    }
  }
}

TEST(Property, AssociativeUpTo81) {
  for (auto G : {family_group("heisenberg", 3, 1), family_group("modular", 3, 4), family_group("wreath", 3, 0),
                 family_group("abelian", 3, 0, {2, 2}), family_group("elementary_abelian", 3, 4)}) {
    const std::uint64_t N = G->order();
    std::vector<Exponents> el;
    for (std::uint64_t a = 0; a < N; ++a) el.push_back(G->decode(a));
    std::vector<std::uint64_t> tab(N * N);
    for (std::uint64_t a = 0; a < N; ++a)
      for (std::uint64_t b = 0; b < N; ++b) tab[a * N + b] = G->encode(G->mul(el[a], el[b]));
    for (std::uint64_t a = 0; a < N; ++a)
      for (std::uint64_t b = 0; b < N; ++b)
        for (std::uint64_t c = 0; c < N; ++c) ASSERT_EQ(tab[tab[a * N + b] * N + c], tab[a * N + tab[b * N + c]]);
  }
}

TEST(Property, OrdersDivideAndDropUnderPowering) {
  for (auto G : {family_group("heisenberg", 3, 2), family_group("modular", 2, 5), family_group("abelian", 5, 0, {2, 1})}) {
    const long long N = static_cast<long long>(G->order());
    for (const Element& x : enumerate_elements(*G)) {
      const long long o = element_order(x);
      EXPECT_EQ(N % o, 0);
      EXPECT_EQ(element_order(power(x, G->prime())), std::max(o / G->prime(), 1LL));
    }
  }
}

TEST(Property, ConcurrentEvaluationMatchesSerial) {
  const auto G = family_group("heisenberg", 3, 2);
  std::vector<std::uint64_t> serial(G->order());
  const Exponents g = G->decode(400);
  for (std::uint64_t a = 0; a < G->order(); ++a) serial[a] = G->encode(G->mul(G->decode(a), g));
  std::vector<std::uint64_t> par(G->order());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      for (std::uint64_t a = t; a < G->order(); a += 4) par[a] = G->encode(G->mul(G->decode(a), g));
    });
  for (auto& th : pool) th.join();
  EXPECT_EQ(serial, par);
}
