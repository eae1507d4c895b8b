#include <gtest/gtest.h>

#include "seqalg/catalog.hpp"

using namespace seqalg;

namespace {

SdsPtr named(const std::string& n) { return catalog_get(n).sds; }

SdsPtr type_of(const std::string& t) {
  static Store store(catalog());
  return store.resolve(parse_type(t));
}

// Oracle for a flat S with value set V: an algorithm S -o S is empty, a
// constant, or asks its argument and then answers each value or not.
std::size_t flat_arrow_count(std::size_t v) {
  std::size_t asks = 1;
  for (std::size_t i = 0; i < v; ++i) asks *= v + 1;
  return 1 + v + asks;
}

// Oracle for apply on a flat arrow, read directly off the words.
std::optional<std::string> oracle_apply(const Sds& arrow, const Strategy& phi, const std::optional<std::string>& x) {
  for (NodeId r : phi.responses) {
    const Word w = arrow.word(r);
    if (w.size() == 2 && w[1].rfind("out ", 0) == 0) return w[1].substr(4);
    if (x && w.size() == 4 && w[2] == "is " + *x) return w[3].substr(4);
  }
  return std::nullopt;
}

}  // namespace

TEST(Affine, FlatArrowCountsMatchTheOracle) {
  EXPECT_EQ(enumerate_strategies(*type_of("Bool -o Bool")).size(), flat_arrow_count(2));
  EXPECT_EQ(flat_arrow_count(2), 12u);
  EXPECT_EQ(enumerate_strategies(*type_of("BoolE -o BoolE")).size(), flat_arrow_count(3));
}

TEST(Affine, ApplyMatchesTheOracleOnBool) {
  const auto B = named("Bool");
  const auto arrow = type_of("Bool -o Bool");
  for (const auto& phi : enumerate_strategies(*arrow)) {
    const AffineAlgorithm a{arrow, phi};
    for (const std::optional<std::string> x : {std::optional<std::string>{}, std::optional<std::string>{"tt"},
                                               std::optional<std::string>{"ff"}}) {
      const Strategy in = x ? strategy_of_words(*B, {{"?", *x}}) : Strategy{};
      const auto want = oracle_apply(*arrow, phi, x);
      const Strategy out = want ? strategy_of_words(*B, {{"?", *want}}) : Strategy{};
      EXPECT_EQ(apply(a, in), out) << format_set(*arrow, phi);
    }
  }
}

TEST(Affine, NegationTranscript) {
  const auto neg = catalog_get("negation").algorithm();
  EXPECT_NE(neg.sds().find({"req ?", "valof ?", "is tt", "out ff"}), kAbsent);
  EXPECT_TRUE(neg.strategy.contains(neg.sds().find({"req ?", "valof ?", "is tt", "out ff"})));
}

TEST(Affine, CoapplyIsDefinedOnlyWhenTheInputIsAsked) {
  const auto B = named("Bool");
  const auto q = counter_of_words(*B, {{"?"}});
  const auto g = coapply(catalog_get("negation").algorithm(), q);
  ASSERT_TRUE(g);
  EXPECT_EQ(*g, q);
  EXPECT_FALSE(coapply(catalog_get("const_tt").algorithm(), q));
}

class CopycatIsIdentity : public ::testing::TestWithParam<std::string> {};

TEST_P(CopycatIsIdentity, OnEveryStrategy) {
  const auto s = type_of(GetParam());
  const auto id = copycat_id(s);
  for (const auto& x : enumerate_strategies(*s)) EXPECT_EQ(apply(id, x), x) << format_set(*s, x);
  for (const auto& a : enumerate_counter_strategies(*s)) {
    const auto g = coapply(id, a);
    ASSERT_TRUE(g);
    EXPECT_EQ(*g, a);
  }
}

INSTANTIATE_TEST_SUITE_P(Small, CopycatIsIdentity, ::testing::Values("Bool", "Bool2", "o_o_o", "BoolE2"));

TEST(Affine, CopycatOnBoolHasThreeResponses) {
  EXPECT_EQ(copycat_id(named("Bool")).strategy.size(), 3u);
}

TEST(Affine, ValidateAffineRejectsNonStrategies) {
  const auto arrow = type_of("Bool -o Bool");
  EXPECT_TRUE(validate_affine(arrow, {{"req ?", "out tt"}}).ok());
  EXPECT_FALSE(validate_affine(arrow, {{"req ?", "out tt"}, {"req ?", "out ff"}}).ok());
  EXPECT_FALSE(validate_affine(arrow, {{"req ?", "out zz"}}).ok());
}

TEST(Affine, PromotedPointsAccumulateTheArgument) {
  const auto base = named("Bool2");
  const auto bp = bang(base);
  for (const auto& x : enumerate_strategies(*base)) {
    const Strategy px = promote_point(*bp, x);
    for (NodeId r : px.responses) {
      const Strategy sub = strategy_of_response(*bp, r);
      EXPECT_TRUE(std::includes(x.responses.begin(), x.responses.end(), sub.responses.begin(), sub.responses.end()));
    }
  }
}

TEST(Affine, SequentialOrsComputeOr) {
  const auto base = named("Bool2");
  const auto B = named("Bool");
  for (const char* name : {"lor", "ror", "lsor", "rsor"}) {
    const auto phi = catalog_get(name).algorithm();
    for (const char* l : {"tt", "ff"})
      for (const char* r : {"tt", "ff"}) {
        const Strategy x = strategy_of_words(*base, {{"?.1", std::string(l) + ".1"}, {"?.2", std::string(r) + ".2"}});
        const std::string want = std::string(l) == "tt" || std::string(r) == "tt" ? "tt" : "ff";
        EXPECT_EQ(apply_sequential(phi, x), strategy_of_words(*B, {{"?", want}})) << name << " " << l << " " << r;
      }
  }
}

// Kleisli composition against composing the functions pointwise.
TEST(Affine, KleisliComposeIsFunctionComposition) {
  const auto base = named("Bool2");
  const auto second = type_of("!Bool -o Bool");
  const auto psis = enumerate_strategies(*second);
  ASSERT_FALSE(psis.empty());
  for (const char* name : {"lor", "ror", "lsor", "rsor", "const2_tt"}) {
    const auto phi = catalog_get(name).algorithm();
    for (const auto& p : psis) {
      const AffineAlgorithm psi{second, p};
      const auto c = kleisli_compose(phi, psi);
      for (const auto& x : enumerate_strategies(*base))
        EXPECT_EQ(apply_sequential(c, x), apply_sequential(psi, apply_sequential(phi, x)))
            << name << " then " << format_set(*second, p);
    }
  }
}

TEST(Affine, KleisliRejectsMismatchedTypes) {
  EXPECT_THROW(kleisli_compose(catalog_get("lor").algorithm(), catalog_get("lor").algorithm()), Error);
}
