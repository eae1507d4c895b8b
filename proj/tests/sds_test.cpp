#include <gtest/gtest.h>

#include <set>

#include "seqalg/catalog.hpp"

using namespace seqalg;

namespace {

// Oracle: a family of words is a strategy (counter-strategy) when every
// word ends in a value (cell), the family contains the value-ending
// (cell-ending) prefixes of its words, and the longest common prefix of two
// members is empty or a member. Counter-strategies are non-empty and have
// no empty common prefix.
bool oracle_behaviour(const Sds& s, const std::vector<Word>& ws, bool strategy) {
  const std::set<Word> set(ws.begin(), ws.end());
  if (!strategy && set.empty()) return false;
  const MoveKind ending = strategy ? MoveKind::value : MoveKind::cell;
  for (const auto& w : set) {
    for (std::size_t k = 1; k <= w.size(); ++k) {
      Word p(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
      if (s.kind(s.find(p)) == ending && !set.count(p)) return false;
    }
    if (s.kind(s.find(w)) != ending) return false;
  }
  for (const auto& a : set)
    for (const auto& b : set) {
      std::size_t k = 0;
      while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
      Word p(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k));
      if (p.empty() ? !strategy : !set.count(p)) return false;
    }
  return true;
}

// Every subset of the positions ending in `kind`, filtered by the oracle.
std::set<std::set<Word>> oracle_family(const Sds& s, bool strategy) {
  std::vector<Word> cands;
  for (NodeId n : strategy ? s.responses() : s.queries()) cands.push_back(s.word(n));
  EXPECT_LE(cands.size(), 20u);
  std::set<std::set<Word>> out;
  for (std::uint32_t mask = 0; mask < (1u << cands.size()); ++mask) {
    std::vector<Word> ws;
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (mask >> i & 1u) ws.push_back(cands[i]);
    if (oracle_behaviour(s, ws, strategy)) out.insert(std::set<Word>(ws.begin(), ws.end()));
  }
  return out;
}

template <class Set>
std::set<std::set<Word>> as_words(const Sds& s, const std::vector<Set>& xs) {
  std::set<std::set<Word>> out;
  for (const auto& x : xs) {
    std::set<Word> ws;
    if constexpr (std::is_same_v<Set, Strategy>)
      for (NodeId n : x.responses) ws.insert(s.word(n));
    else
      for (NodeId n : x.queries) ws.insert(s.word(n));
    out.insert(ws);
  }
  return out;
}

SdsPtr named(const std::string& n) { return catalog_get(n).sds; }

}  // namespace

TEST(Sds, BoolHasThreeStrategies) {
  const auto B = named("Bool");
  const auto xs = enumerate_strategies(*B);
  std::set<std::set<Word>> want{{}, {{"?", "tt"}}, {{"?", "ff"}}};
  EXPECT_EQ(as_words(*B, xs), want);
}

TEST(Sds, PositionsAreClassifiedByTheirLastMove) {
  const auto B = named("Bool");
  EXPECT_EQ(classify(*B, Word{"?"}), PositionKind::query);
  EXPECT_EQ(classify(*B, Word{"?", "tt"}), PositionKind::response);
  EXPECT_THROW(classify(*B, Word{"tt"}), Error);
  EXPECT_THROW(classify(*B, Word{}), Error);
}

TEST(Sds, ValidationRejectsConflictsAndGaps) {
  const auto B = named("Bool");
  auto both = validate_strategy(*B, nodes_of(*B, {{"?", "tt"}, {"?", "ff"}}));
  EXPECT_FALSE(both.ok());
  EXPECT_EQ(both.violation().clause, "glb closure");
  auto cell = validate_strategy(*B, nodes_of(*B, {{"?"}}));
  EXPECT_FALSE(cell.ok());
  EXPECT_FALSE(validate_counter_strategy(*B, {}).ok());
}

class EnumerationOracle : public ::testing::TestWithParam<std::string> {};

TEST_P(EnumerationOracle, StrategiesMatchBruteForce) {
  const auto s = named(GetParam());
  EXPECT_EQ(as_words(*s, enumerate_strategies(*s)), oracle_family(*s, true));
}

TEST_P(EnumerationOracle, CounterStrategiesMatchBruteForce) {
  const auto s = named(GetParam());
  EXPECT_EQ(as_words(*s, enumerate_counter_strategies(*s)), oracle_family(*s, false));
}

TEST_P(EnumerationOracle, OrderIsLexicographicAndStable) {
  const auto s = named(GetParam());
  const auto xs = enumerate_strategies(*s);
  EXPECT_TRUE(std::is_sorted(xs.begin(), xs.end()));
  EXPECT_EQ(xs, enumerate_strategies(*s));
}

INSTANTIATE_TEST_SUITE_P(Small, EnumerationOracle, ::testing::Values("Bool", "o", "Bool2", "BoolE", "o_o_o"));

TEST(Sds, ProductCountsMultiply) {
  EXPECT_EQ(enumerate_strategies(*named("Bool2")).size(), 9u);
  EXPECT_EQ(enumerate_strategies(*named("BoolE2")).size(), 16u);
}

TEST(Sds, PlayDecidesTheWinnerByTheLastMove) {
  const auto B = named("Bool");
  const auto q = counter_of_words(*B, {{"?"}});
  const auto tt = strategy_of_words(*B, {{"?", "tt"}});
  EXPECT_TRUE(wins(*B, tt, q));
  EXPECT_FALSE(wins(*B, Strategy{}, q));
  EXPECT_EQ(B->show(play(*B, tt, q).maximal), "? tt");
  EXPECT_EQ(B->show(play(*B, Strategy{}, q).maximal), "?");
}

TEST(Sds, PlayIsAPositionConsistentWithBoth) {
  const auto s = named("Bool2");
  for (const auto& x : enumerate_strategies(*s))
    for (const auto& a : enumerate_counter_strategies(*s)) {
      const auto r = play(*s, x, a);
      for (NodeId p = r.maximal; p != kEpsilon; p = s->parent(p))
        EXPECT_TRUE(s->kind(p) == MoveKind::value ? x.contains(p) : a.contains(p));
      EXPECT_EQ(r.winner == Winner::player, r.maximal != kEpsilon && s->kind(r.maximal) == MoveKind::value);
    }
}

TEST(Sds, AccessibleQueriesAreUnansweredCells) {
  const auto s = named("Bool2");
  const auto x = strategy_of_words(*s, {{"?.1", "tt.1"}});
  const auto acc = accessible(*s, x);
  std::set<std::string> shown;
  for (NodeId n : acc) shown.insert(s->show(n));
  EXPECT_EQ(shown, (std::set<std::string>{"?.2"}));
}

TEST(Sds, LabelsWrapOnlyWhenSpaced) {
  EXPECT_EQ(wrap_label("?"), "?");
  EXPECT_EQ(wrap_label("req ?"), "(req ?)");
  EXPECT_EQ(wrap_label("<?.1 tt.1>"), "<?.1 tt.1>");
  EXPECT_EQ(word_label({"req ?", "valof <?.1>"}), "<(req ?) (valof <?.1>)>");
}
