#include <gtest/gtest.h>

#include <set>

#include "seqalg/catalog.hpp"

using namespace seqalg;

namespace {

SdsPtr named(const std::string& n) { return catalog_get(n).sds; }

SdsPtr type_of(const std::string& t) {
  static Store store(catalog());
  return store.resolve(parse_type(t));
}

std::set<Word> positions(const Sds& s) {
  std::set<Word> out;
  for (std::size_t n = 0; n < s.size(); ++n) out.insert(s.word(static_cast<NodeId>(n)));
  return out;
}

// Oracle: grow words over every tagged move of source and target, keeping
// those the defining clauses accept. Accepted words are prefix closed, so
// extending only accepted words finds them all.
std::set<Word> oracle_arrow(const Sds& src, const Sds& tgt) {
  std::vector<std::string> alphabet;
  for (const auto& [l, k] : src.labels())
    alphabet.push_back(arrow_label(k == MoveKind::cell ? ArrowTag::valof : ArrowTag::is, l));
  for (const auto& [l, k] : tgt.labels())
    alphabet.push_back(arrow_label(k == MoveKind::cell ? ArrowTag::request : ArrowTag::output, l));
  std::set<Word> out;
  std::vector<Word> frontier{{}};
  while (!frontier.empty()) {
    Word w = frontier.back();
    frontier.pop_back();
    for (const auto& m : alphabet) {
      Word v = w;
      v.push_back(m);
      if (!arrow_word_violation(src, tgt, v) && out.insert(v).second) frontier.push_back(v);
    }
  }
  return out;
}

}  // namespace

TEST(Constructors, MeasuredSizes) {
  EXPECT_EQ(named("Bool2")->size(), 6u);
  EXPECT_EQ(bang(named("Bool2"))->size(), 18u);
  EXPECT_EQ(catalog_get("lor").sds->size(), 45u);
  const auto B = named("Bool");
  const auto arrow = affine_arrow(B, B);
  EXPECT_EQ(arrow->size(), 10u);
  EXPECT_EQ(enumerate_strategies(*arrow).size(), 12u);
}

TEST(Constructors, ProductStrategiesArePairs) {
  const auto B = named("Bool");
  const auto P = named("Bool2");
  const auto& o = *P->origin_as<ProductOrigin>();
  std::set<std::pair<std::set<Word>, std::set<Word>>> pairs;
  for (const auto& x : enumerate_strategies(*P)) {
    std::set<Word> left, right;
    for (NodeId r : x.responses) {
      auto [i, inner] = o.component.at(static_cast<std::size_t>(r));
      (i == 0 ? left : right).insert(B->word(inner));
    }
    pairs.insert({left, right});
  }
  EXPECT_EQ(pairs.size(), 9u);
}

TEST(Constructors, ProductLabelsCarryTheIndex) {
  const auto P = named("Bool2");
  EXPECT_NE(P->find({"?.1", "tt.1"}), kAbsent);
  EXPECT_NE(P->find({"?.2", "ff.2"}), kAbsent);
  EXPECT_EQ(P->find({"?.1", "tt.2"}), kAbsent);
}

class ArrowOracle : public ::testing::TestWithParam<std::pair<std::string, std::string>> {};

TEST_P(ArrowOracle, PositionsMatchTheDefiningClauses) {
  const auto src = type_of(GetParam().first);
  const auto tgt = type_of(GetParam().second);
  EXPECT_EQ(positions(*affine_arrow(src, tgt)), oracle_arrow(*src, *tgt));
}

INSTANTIATE_TEST_SUITE_P(Small, ArrowOracle,
                         ::testing::Values(std::pair{"Bool", "Bool"}, std::pair{"Bool2", "Bool"},
                                           std::pair{"!Bool2", "Bool"}, std::pair{"Bool", "o_o_o"},
                                           std::pair{"o_o_o", "Bool"}, std::pair{"!BoolE2", "BoolE"}));

TEST(Constructors, ArrowWordClauses) {
  const auto B = named("Bool");
  const auto P = named("Bool2");
  EXPECT_FALSE(arrow_word_violation(*B, *B, {"req ?", "valof ?", "is tt", "out ff"}));
  const auto lor = arrow_word_violation(*P, *B, {"req ?", "valof ?.1", "is ff.1", "valof ?.2", "is tt.2"});
  ASSERT_TRUE(lor);
  EXPECT_EQ(lor->clause, "source projection");
  EXPECT_EQ(arrow_word_violation(*B, *B, {"valof ?"})->clause, "request start");
  EXPECT_EQ(arrow_word_violation(*B, *B, {"req ?", "out tt", "out ff"})->clause, "alternation");
}

TEST(Constructors, ProjectionsRestrictToComponents) {
  const Word w{"req ?", "valof ?.1", "is ff.1", "valof ?.2"};
  EXPECT_EQ(restrict_to_target(w), (Word{"?"}));
  EXPECT_EQ(restrict_to_source(w), (Word{"?.1", "ff.1", "?.2"}));
}

TEST(Constructors, BangAccumulatesResponses) {
  const auto bp = bang(named("Bool2"));
  const NodeId r = bp->find({"<?.1>", "<?.1 ff.1>", "<?.2>", "<?.2 tt.2>"});
  ASSERT_GE(r, 0);
  const Strategy x = strategy_of_response(*bp, r);
  EXPECT_EQ(format_set(*named("Bool2"), x), "{?.1 ff.1, ?.2 tt.2}");
}

TEST(Constructors, BangResponsesAreStrategiesOfTheBase) {
  const auto base = named("Bool2");
  const auto bp = bang(base);
  for (NodeId r : bp->responses()) {
    const Strategy x = strategy_of_response(*bp, r);
    std::vector<NodeId> rs = x.responses;
    EXPECT_TRUE(validate_strategy(*base, rs).ok()) << bp->show(r);
  }
}

TEST(Constructors, DualSwapsPolarity) {
  const auto B = named("Bool");
  const Polarized d = dual(*B);
  ASSERT_EQ(d.size(), B->size());
  for (std::size_t n = 0; n < d.size(); ++n)
    EXPECT_NE(d.nodes[n].polarity, polarity_of(B->kind(static_cast<NodeId>(n))));
  const Polarized down = shift_down(*B);
  EXPECT_EQ(down.size(), B->size() + 1);
  EXPECT_EQ(down.nodes[0].label, kStar);
  EXPECT_THROW(shift_down(down), Error);
}

TEST(Constructors, LaurentParMatchesTheArrow) {
  for (const auto& [s, t] : {std::pair{"Bool", "Bool"}, std::pair{"Bool2", "Bool"}}) {
    const auto la = laurent_arrow(type_of(s), type_of(t));
    ASSERT_EQ(la.par->size(), la.arrow->size());
    std::set<NodeId> image(la.to_arrow.begin(), la.to_arrow.end());
    EXPECT_EQ(image.size(), la.arrow->size());
    EXPECT_FALSE(image.count(kAbsent));
  }
}
