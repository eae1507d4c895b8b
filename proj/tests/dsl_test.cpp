#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "seqalg/dsl.hpp"

using namespace seqalg;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// The error message of loading `text` over the catalog, or "" on success.
std::string load_error(const std::string& text) {
  Store s(catalog());
  try {
    load_definitions(text, s);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Dsl, CatalogMatchesGoldenFile) {
  EXPECT_EQ(print_definitions(*catalog()), slurp(SEQALG_TEST_DIR "/golden/catalog.sds"));
}

TEST(Dsl, PrintParsePrintIsStable) {
  const std::string text = print_definitions(*catalog());
  Store s;
  load_definitions(text, s);
  EXPECT_EQ(print_definitions(s), text);
  for (const Entry* e : catalog()->all()) {
    const Entry& again = s.get(e->name);
    EXPECT_EQ(again.kind, e->kind);
    if (e->sds) EXPECT_TRUE(again.sds->same_positions(*e->sds)) << e->name;
    if (e->kind == EntryKind::algorithm) EXPECT_TRUE(same_algorithm(again.algorithm(), e->algorithm())) << e->name;
    if (e->kind == EntryKind::table) EXPECT_EQ(again.table, e->table) << e->name;
  }
}

TEST(Dsl, BoolSourceGivesTheCatalogBool) {
  Store s(catalog());
  load_definitions(R"(sds B { cell "?" { value "tt" value "ff" } })", s);
  EXPECT_TRUE(s.sds_named("B")->same_positions(*catalog_get("Bool").sds));
}

TEST(Dsl, NegationSourceGivesTheNegationStrategy) {
  Store s(catalog());
  load_definitions(R"(
    algorithm n : Bool -o Bool {
      request "?" { valof "?" { is "tt" { output "ff" } is "ff" { output "tt" } } }
    })",
                   s);
  EXPECT_TRUE(same_algorithm(s.get("n").algorithm(), catalog_get("negation").algorithm()));
}

TEST(Dsl, SampleFileLoads) {
  Store s(catalog());
  const auto names = load_definitions(slurp(SEQALG_SOURCE_DIR "/catalog/examples.sds"), s);
  EXPECT_EQ(names.size(), 7u);
  EXPECT_TRUE(same_algorithm(s.get("not_again").algorithm(), catalog_get("negation").algorithm()));
  EXPECT_EQ(s.get("lor_spec").table.at({"ff", "tt"}), "tt");
  EXPECT_EQ(s.get("lor_spec").table.at({"tt", "ff"}), "tt");
  EXPECT_TRUE(wins(*s.sds_named("Bool2"), s.get("tt_ff").strategy, s.get("ask_left").counter));
}

TEST(Dsl, CommentsAndWhitespaceAreIgnored) {
  Store s;
  load_definitions("# leading\nsds X{cell\"a\"{value\"b\"}}# trailing", s);
  EXPECT_EQ(s.sds_named("X")->size(), 2u);
}

TEST(Dsl, ErrorsCarryTheirLocation) {
  EXPECT_EQ(load_error("sds X {\n  cell {\n}"),
            "parse-error: line 2, column 8: expected a quoted label after 'cell', found '{'");
  EXPECT_NE(load_error("sds Y = Bool * Nope").find("line 1, column 1"), std::string::npos);
  EXPECT_NE(load_error("sds Y = Bool * Nope").find("unknown-name"), std::string::npos);
  EXPECT_NE(load_error("frob X").find("unknown declaration"), std::string::npos);
  EXPECT_NE(load_error("sds Bool { cell \"?\" }").find("violation"), std::string::npos);
}

TEST(Dsl, ContentIsValidated) {
  EXPECT_NE(load_error("algorithm a : Bool -o Bool { request \"?\" { output \"zz\" } }"), "");
  EXPECT_NE(load_error("algorithm a : Bool { cell \"?\" }"), "");
  EXPECT_NE(load_error("strategy x : Bool { cell \"?\" { value \"tt\" value \"ff\" } }").find("glb"),
            std::string::npos);
  EXPECT_NE(load_error("counter a : Bool2 { cell \"?.1\" cell \"?.2\" }"), "");
  EXPECT_NE(load_error("table t (2) { (tt) -> tt; }").find("row has 1 arguments"), std::string::npos);
  EXPECT_NE(load_error("table t (1) { (bot) -> tt; (ff) -> ff; }").find("not monotone"), std::string::npos);
  EXPECT_NE(load_error("table t (1) { (tt) -> tt; (tt) -> tt; }").find("duplicate"), std::string::npos);
}

TEST(Dsl, LaterDefinitionsSeeEarlierOnes) {
  Store s(catalog());
  load_definitions("sds P = Bool * o\nsds Q = !P -o Bool", s);
  EXPECT_EQ(s.get("Q").sds->name(), "!(Bool * o) -o Bool");
  EXPECT_NE(load_error("sds Q = !P2 -o Bool\nsds P2 = Bool * o"), "");
}
