#pragma once

// The built-in library: base sds's, the parallel/sequential or family, the
// Bool ≅ o→o→o isomorphism pair, a functional that inspects the evaluation
// order of its argument, call-cc, and the error-extended sequential ors.

#include <memory>
#include <string>
#include <vector>

#include "seqalg/store.hpp"

namespace seqalg {

/// A move tree of an algorithm, given by tags and component labels.
struct Move {
  ArrowTag tag;
  std::string inner;
  std::vector<Move> next;
};

inline Move req(std::string c, std::vector<Move> next = {}) { return {ArrowTag::request, std::move(c), std::move(next)}; }
inline Move valof(std::string c, std::vector<Move> next = {}) { return {ArrowTag::valof, std::move(c), std::move(next)}; }
inline Move is(std::string v, std::vector<Move> next = {}) { return {ArrowTag::is, std::move(v), std::move(next)}; }
inline Move out(std::string v, std::vector<Move> next = {}) { return {ArrowTag::output, std::move(v), std::move(next)}; }

/// The responses named by a move tree.
inline Strategy strategy_from_moves(const Sds& arrow, const std::vector<Move>& roots) {
  std::vector<NodeId> rs;
  auto go = [&](auto& self, NodeId at, const Move& m) -> void {
    const std::string label = arrow_label(m.tag, m.inner);
    NodeId n = arrow.child(at, label);
    if (n == kAbsent)
      throw Error(ErrorCode::not_a_position, "'" + join_word([&] {
                                                 Word w = at == kEpsilon ? Word{} : arrow.word(at);
                                                 w.push_back(label);
                                                 return w;
                                               }()) + "' in " + arrow.name());
    if (arrow.kind(n) == MoveKind::value) rs.push_back(n);
    for (const auto& c : m.next) self(self, n, c);
  };
  for (const auto& m : roots) go(go, kEpsilon, m);
  return validate_strategy(arrow, rs).value();
}

namespace detail {

inline void add_forest(Store& s, std::string name, std::string anchor, const std::vector<Tree>& cells) {
  Entry e;
  e.name = std::move(name);
  e.kind = EntryKind::sds;
  e.anchor = std::move(anchor);
  e.sds = make_sds(e.name, cells);
  s.add(std::move(e));
}

inline void add_type(Store& s, std::string name, std::string anchor, const std::string& expr) {
  Entry e;
  e.name = std::move(name);
  e.kind = EntryKind::sds;
  e.anchor = std::move(anchor);
  e.type = parse_type(expr);
  e.sds = s.resolve(*e.type);
  s.add(std::move(e));
}

inline void add_algorithm(Store& s, std::string name, std::string anchor, const std::string& expr,
                          const std::vector<Move>& moves) {
  Entry e;
  e.name = std::move(name);
  e.kind = EntryKind::algorithm;
  e.anchor = std::move(anchor);
  e.type = parse_type(expr);
  e.sds = s.resolve(*e.type);
  arrow_origin(*e.sds);
  e.strategy = strategy_from_moves(*e.sds, moves);
  s.add(std::move(e));
}

inline void add_table(Store& s, FunctionTable t, std::string anchor) {
  if (auto bad = monotonicity_violation(t)) throw Error(ErrorCode::violation, t.name + " is not monotone: " + *bad);
  Entry e;
  e.name = t.name;
  e.kind = EntryKind::table;
  e.anchor = std::move(anchor);
  e.table = std::move(t);
  s.add(std::move(e));
}

inline std::string bq(const Word& w) { return word_label(w); }

inline Word extend(Word w, const std::string& m) {
  w.push_back(m);
  return w;
}

// Sequential or on two arguments: ask `first`; on `stop` answer `stop`,
// otherwise ask the other argument and return it. Both strict variants ask
// the second argument on every branch.
inline std::vector<Move> or_moves(int first, bool strict, const std::vector<std::string>& values) {
  const int second = 3 - first;
  auto q = [](int i) { return bq({product_label("?", i)}); };
  auto r = [](int i, const std::string& v) { return bq({product_label("?", i), product_label(v, i)}); };
  std::vector<Move> after_first;
  for (const auto& v1 : values) {
    if (v1 == kErrorLabel) {
      after_first.push_back(is(r(first, v1), {out(v1)}));
      continue;
    }
    if (v1 == "tt" && !strict) {
      after_first.push_back(is(r(first, v1), {out("tt")}));
      continue;
    }
    std::vector<Move> after_second;
    for (const auto& v2 : values) {
      const std::string res = v2 == kErrorLabel ? v2 : (v1 == "tt" || v2 == "tt") ? "tt" : "ff";
      after_second.push_back(is(r(second, v2), {out(res)}));
    }
    after_first.push_back(is(r(first, v1), {valof(q(second), after_second)}));
  }
  return {req("?", {valof(q(first), after_first)})};
}

inline FlatValue por_of(const FlatTuple& t) {
  if (t[0] == "tt" || t[1] == "tt") return "tt";
  if (t[0] == "ff" && t[1] == "ff") return "ff";
  return std::nullopt;
}

inline FlatValue sor_of(const FlatTuple& t) {
  if (!t[0] || !t[1]) return std::nullopt;
  return (t[0] == "tt" || t[1] == "tt") ? "tt" : "ff";
}

inline void build_catalog(Store& s) {
  const std::vector<std::string> tf{"tt", "ff"};
  const std::vector<std::string> tfe{"tt", "ff", kErrorLabel};

  add_forest(s, "Bool", "booleans: one cell, values tt and ff",
             {Tree{"?", {Tree{"tt", {}}, Tree{"ff", {}}}}});
  add_forest(s, "o", "one cell and no value", {Tree{"?", {}}});
  add_type(s, "Bool2", "pairs of booleans", "Bool * Bool");
  add_type(s, "o_o_o", "o -> o -> o, uncurried; three strategies ordered like those of Bool",
           "!(o * o) -o o");
  add_type(s, "BoolE", "booleans with the error value err", "with_error(Bool)");
  add_type(s, "BoolE2", "pairs of booleans with errors", "BoolE * BoolE");

  add_algorithm(s, "id_Bool", "copycat identity on Bool", "Bool -o Bool",
                {req("?", {valof("?", {is("tt", {out("tt")}), is("ff", {out("ff")})})})});
  add_algorithm(s, "negation", "boolean negation", "Bool -o Bool",
                {req("?", {valof("?", {is("tt", {out("ff")}), is("ff", {out("tt")})})})});
  add_algorithm(s, "const_tt", "constant tt, ignoring its argument", "Bool -o Bool", {req("?", {out("tt")})});
  add_algorithm(s, "const_ff", "constant ff, ignoring its argument", "Bool -o Bool", {req("?", {out("ff")})});
  add_algorithm(s, "const2_tt", "constant tt on pairs, asking nothing", "!Bool2 -o Bool", {req("?", {out("tt")})});
  add_algorithm(s, "lor", "left or: tt as soon as the left argument is tt", "!Bool2 -o Bool",
                or_moves(1, false, tf));
  add_algorithm(s, "ror", "right or: tt as soon as the right argument is tt", "!Bool2 -o Bool",
                or_moves(2, false, tf));
  add_algorithm(s, "lsor", "strict or, left argument first", "!Bool2 -o Bool", or_moves(1, true, tf));
  add_algorithm(s, "rsor", "strict or, right argument first", "!Bool2 -o Bool", or_moves(2, true, tf));
  add_algorithm(s, "lsor_err", "strict or, left first, propagating err", "!BoolE2 -o BoolE",
                or_moves(1, true, tfe));
  add_algorithm(s, "rsor_err", "strict or, right first, propagating err", "!BoolE2 -o BoolE",
                or_moves(2, true, tfe));

  add_algorithm(s, "ite", "if then else: Bool into o -> o -> o", "Bool -o o_o_o",
                {req("req ?", {valof("?", {is("tt", {out("valof <?.1>")}),
                                           is("ff", {out("valof <?.2>")})})})});
  add_algorithm(s, "catch", "catch: o -> o -> o back into Bool", "o_o_o -o Bool",
                {req("?", {valof("req ?", {is("valof <?.1>", {out("tt")}),
                                           is("valof <?.2>", {out("ff")})})})});

  // Functionals over F = !Bool2 -o Bool.
  const Word fq{"req ?"};
  const std::string f_cell = bq(fq);
  auto f_resp = [&](const std::string& m) { return bq(extend(fq, m)); };
  add_algorithm(s, "separator", "tt on arguments that consult ?.1 first, ff on ?.2 first",
                "!(!Bool2 -o Bool) -o Bool",
                {req("?", {valof(f_cell, {is(f_resp("valof <?.1>"), {out("tt")}),
                                          is(f_resp("valof <?.2>"), {out("ff")})})})});
  add_algorithm(s, "strictness_probe", "tt on arguments that consult an input first, ff on constants",
                "!(!Bool2 -o Bool) -o Bool",
                {req("?", {valof(f_cell, {is(f_resp("valof <?.1>"), {out("tt")}),
                                          is(f_resp("valof <?.2>"), {out("tt")}),
                                          is(f_resp("out tt"), {out("ff")}),
                                          is(f_resp("out ff"), {out("ff")})})})});

  // call-cc at ((Bool -> o) -> Bool) -> Bool. K = !Bool -o o is the
  // continuation, Y = !K -o Bool the argument.
  //   K query   "req ?"                            continuation called
  //   K resp.   "req ? valof <?>"                  it asks its boolean
  //   K query   "req ? valof <?> is <? v>"         the boolean is v
  //   Y query   "req ?"                            argument asked for its result
  //   Y resp.   "req ? out v"                      it returns v directly
  //   Y resp.   "req ? valof <K:req ?>"            it calls the continuation
  //   Y query   ... "is <K:req ? valof <?>>"       the continuation asks its boolean
  //   Y resp.   ... "valof <K:... is <? v>>"       the argument passes v
  const Word kq{"req ?"};
  const Word kr = extend(kq, "valof <?>");
  const Word yq{"req ?"};
  const Word yr_call = extend(yq, arrow_label(ArrowTag::valof, bq(kq)));
  const Word yq_arg = extend(yr_call, arrow_label(ArrowTag::is, bq(kr)));
  auto passes = [&](const std::string& v) {
    return bq(extend(yq_arg, arrow_label(ArrowTag::valof, bq(extend(kr, "is <? " + v + ">")))));
  };
  add_algorithm(s, "callcc", "call-cc: the argument's result, or the value it passes its continuation",
                "!(!(!Bool -o o) -o Bool) -o Bool",
                {req("?", {valof(bq(yq), {is(bq(yr_call), {valof(bq(yq_arg), {is(passes("tt"), {out("tt")}),
                                                                               is(passes("ff"), {out("ff")})})}),
                                          is(bq(extend(yq, "out tt")), {out("tt")}),
                                          is(bq(extend(yq, "out ff")), {out("ff")})})})});

  const auto B = s.sds_named("Bool");
  add_table(s, make_table("por", {B, B}, por_of), "parallel or: tt if either argument is tt");
  add_table(s, make_table("sor", {B, B}, sor_of), "strict or: defined only when both arguments are");
  add_table(s, make_table("always_tt", {B, B}, [](const FlatTuple&) -> FlatValue { return "tt"; }),
            "constant tt on pairs");
}

}  // namespace detail

/// The built-in catalog, built once; read-only afterwards.
inline std::shared_ptr<const Store> catalog() {
  static const std::shared_ptr<const Store> instance = [] {
    auto s = std::make_shared<Store>();
    detail::build_catalog(*s);
    return std::shared_ptr<const Store>(s);
  }();
  return instance;
}

inline const Entry& catalog_get(const std::string& name) { return catalog()->get(name); }

}  // namespace seqalg
