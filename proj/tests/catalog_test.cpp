#include <gtest/gtest.h>

#include "seqalg/acceptance.hpp"

using namespace seqalg;

namespace {

SdsPtr named(const std::string& n) { return catalog_get(n).sds; }

Strategy tt_or_ff(const Sds& b, const std::string& v) { return strategy_of_words(b, {{"?", v}}); }

}  // namespace

TEST(Catalog, EveryAlgorithmRevalidates) {
  for (const Entry* e : catalog()->all()) {
    EXPECT_FALSE(e->anchor.empty()) << e->name;
    if (e->kind != EntryKind::algorithm) continue;
    std::vector<Word> words;
    for (NodeId r : e->strategy.responses) words.push_back(e->sds->word(r));
    EXPECT_TRUE(validate_affine(e->sds, words).ok()) << e->name;
  }
}

TEST(Catalog, NamesAreUnique) {
  Store s(catalog());
  Entry dup;
  dup.name = "Bool";
  dup.kind = EntryKind::sds;
  dup.sds = named("o");
  EXPECT_THROW(s.add(dup), Error);
  EXPECT_THROW(catalog_get("nope"), Error);
}

TEST(Catalog, DomainSizes) {
  EXPECT_EQ(enumerate_strategies(*bang(named("Bool2"))).size(), 49u);
  EXPECT_EQ(enumerate_strategies(*catalog_get("lor").sds).size(), 291u);
  EXPECT_EQ(bang(catalog_get("lor").sds)->size(), 6957u);
  EXPECT_EQ(catalog_get("separator").sds->size(), 16280u);
}

TEST(Catalog, OrsAreDistinctStrategies) {
  const std::vector<std::string> ors{"lor", "ror", "lsor", "rsor"};
  for (std::size_t i = 0; i < ors.size(); ++i)
    for (std::size_t j = i + 1; j < ors.size(); ++j)
      EXPECT_FALSE(same_algorithm(catalog_get(ors[i]).algorithm(), catalog_get(ors[j]).algorithm()));
}

TEST(Catalog, SeparatorReadsTheFirstQuestion) {
  const auto sep = catalog_get("separator").algorithm();
  const Sds& t = *sep.target();
  for (const auto& [name, v] : std::vector<std::pair<std::string, std::string>>{
           {"lor", "tt"}, {"lsor", "tt"}, {"ror", "ff"}, {"rsor", "ff"}})
    EXPECT_EQ(apply(sep, promote_point(*sep.source(), catalog_get(name).strategy)), tt_or_ff(t, v)) << name;
  EXPECT_EQ(apply(sep, promote_point(*sep.source(), catalog_get("const2_tt").strategy)), Strategy{});
}

TEST(Catalog, StrictnessProbeSeparatesConstants) {
  const auto probe = catalog_get("strictness_probe").algorithm();
  const Sds& t = *probe.target();
  EXPECT_EQ(apply(probe, promote_point(*probe.source(), catalog_get("const2_tt").strategy)), tt_or_ff(t, "ff"));
  EXPECT_EQ(apply(probe, promote_point(*probe.source(), catalog_get("ror").strategy)), tt_or_ff(t, "tt"));
}

TEST(Catalog, EqualityIsDecidedWithAWitness) {
  const auto v = acceptance::decide_equal(catalog_get("separator").algorithm(),
                                          catalog_get("strictness_probe").algorithm());
  EXPECT_FALSE(v.equal);
  EXPECT_FALSE(v.witness.empty());
}

TEST(Catalog, IteAndCatchAreMutuallyInverse) {
  EXPECT_TRUE(same_algorithm(machine_compose(catalog_get("ite").algorithm(), catalog_get("catch").algorithm()),
                             copycat_id(named("Bool"))));
  EXPECT_TRUE(same_algorithm(machine_compose(catalog_get("catch").algorithm(), catalog_get("ite").algorithm()),
                             copycat_id(named("o_o_o"))));
}

TEST(Catalog, CallccReturnsTheFedBoolean) {
  const auto cc = catalog_get("callcc").algorithm();
  const Sds& src = *cc.source();
  const Sds& y = *bang_origin(src).base;
  for (const std::string v : {"tt", "ff"}) {
    EXPECT_EQ(apply(cc, promote_point(src, acceptance::callcc_argument(y, v, false))), tt_or_ff(*cc.target(), v));
    EXPECT_EQ(apply(cc, promote_point(src, acceptance::callcc_argument(y, v, true))), tt_or_ff(*cc.target(), v));
  }
}

TEST(Catalog, CallccWaitsOnSilentArguments) {
  const auto cc = catalog_get("callcc").algorithm();
  const Sds& src = *cc.source();
  const Sds& y = *bang_origin(src).base;
  EXPECT_EQ(apply(cc, promote_point(src, Strategy{})), Strategy{});
  const Strategy calls = strategy_of_words(y, {{"req ?", "valof <(req ?)>"}});
  EXPECT_EQ(apply(cc, promote_point(src, calls)), Strategy{});
}

TEST(Catalog, TablesAreMonotone) {
  for (const char* t : {"por", "sor", "always_tt"})
    EXPECT_FALSE(monotonicity_violation(catalog()->get(t, EntryKind::table).table)) << t;
}
