#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "seqalg/bohm.hpp"

using namespace seqalg;

namespace {

const char* kM = "z M1 M2 (λz1 z2. z1 (λu. t M5 M6) M4)";
const char* kN = "λx1 x2 x3. x3 (λy1 y2. y1 N1) N2";

// Random closed-ish terms over a small variable pool, redexes included.
Term random_term(std::mt19937& rng, int depth) {
  static const std::vector<std::string> vars{"a", "b", "x", "y"};
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 2);
  switch (pick(rng)) {
    case 0: return Term::var(vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)]);
    case 1: return Term::lam(vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)],
                             random_term(rng, depth - 1));
    default: return Term::app(random_term(rng, depth - 1), random_term(rng, depth - 1));
  }
}

std::string base_name(const std::string& v) { return std::regex_replace(v, std::regex("(_[0-9]+)+$"), ""); }

}  // namespace

TEST(Lambda, ParseAndPrint) {
  EXPECT_EQ(print_term(parse_term("\\x y. x (\\z. z) y")), "λx y. x (λz. z) y");
  EXPECT_EQ(print_term(parse_term(kN)), kN);
  EXPECT_EQ(parse_term("(f a) b"), parse_term("f a b"));
  EXPECT_THROW(parse_term("λ. x"), Error);
  EXPECT_THROW(parse_term("(x"), Error);
  EXPECT_THROW(parse_term(""), Error);
}

TEST(Lambda, SubstitutionAvoidsCapture) {
  const Term t = substitute(parse_term("λy. x y"), "x", parse_term("y"));
  EXPECT_EQ(print_term(t), "λy_1. y y_1");
  EXPECT_EQ(substitute(parse_term("λx. x"), "x", parse_term("y")), parse_term("λx. x"));
}

TEST(Lambda, PaperExampleReachesHeadT) {
  const auto h = head_normalize(substitute(parse_term(kM), "z", parse_term(kN)), kDefaultFuel, true);
  EXPECT_EQ(h.head, "t");
  EXPECT_EQ(h.args.size(), 2u);
  EXPECT_TRUE(h.binders.empty());
  EXPECT_EQ(h.trace.size(), h.steps + 1);
}

TEST(Lambda, DivergenceExhaustsFuel) {
  try {
    head_normalize(parse_term("(λx. x x) (λx. x x)"), 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::fuel_exhausted);
  }
}

TEST(Lambda, EveryTermHasExactlyOneHeadForm) {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Term t = random_term(rng, 5);
    const HeadForm f = head_form(t);
    const bool redex = f.head.kind() == Term::Kind::lam && !f.args.empty();
    EXPECT_NE(f.is_hnf(), redex) << print_term(t);
    EXPECT_EQ(rebuild(f.binders, f.head, f.args), t);
  }
}

TEST(Lambda, HeadNormalFormsAreStable) {
  std::mt19937 rng(11);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    HeadNormalForm h;
    try {
      h = head_normalize(random_term(rng, 5), 200);
    } catch (const Error&) {
      continue;
    }
    std::vector<Term> args = h.args;
    for (auto& a : args) {
      try {
        const auto ha = head_normalize(a, 200);
        a = rebuild(ha.binders, Term::var(ha.head), ha.args);
      } catch (const Error&) {
      }
    }
    const auto again = head_normalize(rebuild(h.binders, Term::var(h.head), args), 200);
    EXPECT_EQ(again.steps, 0u);
    EXPECT_EQ(again.binders, h.binders);
    EXPECT_EQ(again.head, h.head);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Bohm, ExpansionIsOnDemand) {
  BohmExplorer e(substitute(parse_term(kM), "z", parse_term(kN)));
  const BohmNode root = e.expand({});
  EXPECT_EQ(root.head, "t");
  EXPECT_EQ(root.child_count, 2u);
  EXPECT_EQ(e.expand({1}).head, "M5");
  EXPECT_THROW(e.expand({3}), Error);
  EXPECT_THROW(e.expand({0}), Error);
}

TEST(Bohm, DivergentSubtermsAreMarked) {
  BohmExplorer e(parse_term("f ((λx. x x) (λx. x x)) a"), 100);
  EXPECT_TRUE(e.expand({1}).divergent);
  EXPECT_EQ(show_node(e.expand({1})), "⊥");
  EXPECT_EQ(e.expand({2}).head, "a");
  EXPECT_THROW(e.expand({1, 1}), Error);
}

TEST(Bohm, DisclosureIsMonotone) {
  std::mt19937 rng(3);
  for (const auto& p : simple_corpus(30, 5)) {
    const Term t = substitute(p.m, "z", p.n);
    BohmExplorer fresh(t), shared(t);
    std::vector<std::vector<int>> paths{{}};
    for (std::size_t i = 0; i < paths.size() && paths.size() < 40; ++i) {
      const BohmNode n = shared.expand(paths[i]);
      for (std::size_t c = 1; c <= n.child_count; ++c) {
        auto q = paths[i];
        q.push_back(static_cast<int>(c));
        paths.push_back(q);
      }
    }
    std::shuffle(paths.begin(), paths.end(), rng);
    for (const auto& q : paths) EXPECT_EQ(fresh.expand(q), shared.expand(q));
  }
}

TEST(TokenGame, PaperTrace) {
  const auto t = token_game_trace(parse_term(kM), parse_term(kN));
  EXPECT_EQ(show_trace(t), "M:z; N:λx1 x2 x3.; N:x3; M:λz1 z2.; M:z1; N:λy1 y2.; N:y1; M:λu.; M:t");
  EXPECT_EQ(t.ending, GameTrace::Ending::free_head);
  EXPECT_EQ(t.final_head, "t");
}

TEST(TokenGame, FreeHeadStopsAtOnce) {
  const auto t = token_game_trace(parse_term("a z"), parse_term(kN));
  EXPECT_EQ(show_trace(t), "M:a");
  EXPECT_EQ(t.final_head, "a");
}

TEST(TokenGame, PointerCasesAreRejected) {
  auto code = [](const char* m, const char* n) {
    try {
      token_game_trace(parse_term(m), parse_term(n));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::violation;
  };
  // f is bound two bunches up.
  EXPECT_EQ(code("z (λg. g b)", "λf. f (λx. f)"), ErrorCode::unsupported_case);
  // More arguments than the bunch binds.
  EXPECT_EQ(code("z a", "λx. x (λy. y)"), ErrorCode::unsupported_case);
  EXPECT_EQ(code("z a", "λx. z"), ErrorCode::unsupported_case);
  EXPECT_EQ(code("λw. z", "λx. x"), ErrorCode::unsupported_case);
}

TEST(TokenGame, AgreesWithHeadReductionOnTheCorpus) {
  const auto corpus = simple_corpus(200);
  ASSERT_EQ(corpus.size(), 200u);
  for (const auto& p : corpus) {
    const auto g = token_game_trace(p.m, p.n);
    const auto h = head_normalize(substitute(p.m, "z", p.n));
    EXPECT_EQ(g.final_head, base_name(h.head)) << print_term(p.m) << " / " << print_term(p.n);
  }
}

TEST(TokenGame, CorpusIsDeterministic) {
  const auto a = simple_corpus(20, 9), b = simple_corpus(20, 9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].m, b[i].m);
    EXPECT_EQ(a[i].n, b[i].n);
  }
}
