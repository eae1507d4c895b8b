#include <gtest/gtest.h>

#include "seqalg/axioms.hpp"
#include "seqalg/catalog.hpp"
#include "seqalg/table.hpp"

using namespace seqalg;

namespace {

SdsPtr type_of(const std::string& t) {
  static Store store(catalog());
  return store.resolve(parse_type(t));
}

SdsPtr named(const std::string& n) { return catalog_get(n).sds; }

SymmetricAlgorithm symmetric(const AffineAlgorithm& a) {
  return to_symmetric(a, make_domain(a.source()), make_domain(a.target()));
}

}  // namespace

class Roundtrip : public ::testing::TestWithParam<std::string> {};

TEST_P(Roundtrip, FromSymmetricInvertsToSymmetric) {
  const auto arrow = type_of(GetParam());
  const auto& o = arrow_origin(*arrow);
  const auto ds = make_domain(o.source), dt = make_domain(o.target);
  for (const auto& x : enumerate_strategies(*arrow)) {
    const AffineAlgorithm a{arrow, x};
    EXPECT_TRUE(same_algorithm(from_symmetric(to_symmetric(a, ds, dt)), a)) << format_set(*arrow, x);
  }
}

INSTANTIATE_TEST_SUITE_P(Small, Roundtrip, ::testing::Values("Bool -o Bool", "Bool2 -o Bool", "Bool -o Bool2", "o_o_o -o Bool"));

TEST(Symmetric, ConflictingPairsAreRejected) {
  auto fg = symmetric(catalog_get("const_tt").algorithm());
  fg.g = symmetric(catalog_get("negation").algorithm()).g;
  EXPECT_THROW(from_symmetric(fg), Error);
}

TEST(Symmetric, DenotationalCompositionOfNegations) {
  const auto n = symmetric(catalog_get("negation").algorithm());
  const auto id = symmetric(copycat_id(named("Bool")));
  const auto c = denotational_compose(n, n);
  EXPECT_EQ(c.f, id.f);
  EXPECT_EQ(c.g, id.g);
}

class CatalogAxioms : public ::testing::TestWithParam<std::string> {};

TEST_P(CatalogAxioms, Hold) {
  const auto report = check_axioms(symmetric(catalog_get(GetParam()).algorithm()));
  for (const auto& e : report.entries)
    EXPECT_EQ(e.verdict, "pass") << e.axiom << (e.witnesses.empty() ? "" : ": " + e.witnesses.front());
}

INSTANTIATE_TEST_SUITE_P(Catalog, CatalogAxioms,
                         ::testing::Values("id_Bool", "negation", "const_tt", "const_ff", "const2_tt", "lor",
                                           "ror", "lsor", "rsor", "lsor_err", "rsor_err", "ite", "catch"));

TEST(Symmetric, AxiomsHoldOnEveryAffineAlgorithmOfBoolToBool) {
  const auto arrow = type_of("Bool -o Bool");
  for (const auto& x : enumerate_strategies(*arrow))
    EXPECT_TRUE(check_axioms(symmetric(AffineAlgorithm{arrow, x})).ok()) << format_set(*arrow, x);
}

TEST(Symmetric, WipingTheCounterFunctionBreaksTheLeftAxioms) {
  auto fg = symmetric(catalog_get("negation").algorithm());
  for (auto& g : fg.g) g.reset();
  const auto report = check_axioms(fg);
  EXPECT_FALSE(report.ok());
  EXPECT_FALSE(report.violations("L").empty());
  EXPECT_FALSE(report.violations("LS").empty());
}

TEST(Symmetric, ParallelOrIsNotStable) {
  const auto P = named("Bool2");
  const auto B = named("Bool");
  const auto d = make_domain(P);
  const auto por = table_function(catalog()->get("por", EntryKind::table).table, P, B);
  const auto both = strategy_of_words(*P, {{"?.1", "tt.1"}, {"?.2", "tt.2"}});
  const auto q = counter_of_words(*B, {{"?"}});
  try {
    stability_witness(*d, *B, por, both, q);
    FAIL() << "por has a least witness";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::stability_failure);
  }
  EXPECT_FALSE(sequentiality_index(*d, *B, por, Strategy{}, q));
}

TEST(Symmetric, StrictOrIsSequential) {
  const auto P = named("Bool2");
  const auto B = named("Bool");
  const auto d = make_domain(P);
  const auto sor = table_function(catalog()->get("sor", EntryKind::table).table, P, B);
  const auto q = counter_of_words(*B, {{"?"}});
  const auto x = strategy_of_words(*P, {{"?.1", "ff.1"}, {"?.2", "tt.2"}});
  EXPECT_EQ(stability_witness(*d, *B, sor, x, q), x);
  const auto idx = sequentiality_index(*d, *B, sor, Strategy{}, q);
  ASSERT_TRUE(idx);
  const auto s = format_set(*P, *idx);
  EXPECT_TRUE(s == "{?.1}" || s == "{?.2}") << s;
}
