#pragma once

// The acceptance checks: one verdict per headline claim, each under a time
// limit. A check returns an empty string on success or a reason otherwise.

#include <algorithm>
#include <chrono>
#include <functional>
#include <regex>
#include <string>
#include <vector>

#include "seqalg/axioms.hpp"
#include "seqalg/bohm.hpp"
#include "seqalg/catalog.hpp"
#include "seqalg/machine.hpp"
#include "seqalg/symmetric.hpp"
#include "seqalg/table.hpp"

namespace seqalg {

struct AcceptanceCheck {
  std::string name;
  double limit_seconds;
  std::function<std::string()> run;
};

struct AcceptanceResult {
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

namespace acceptance {

inline std::string show_strategy(const Sds& s, const Strategy& x) { return format_set(s, x); }

inline bool same_symmetric(const SymmetricAlgorithm& a, const SymmetricAlgorithm& b) {
  return a.f == b.f && a.g == b.g;
}

/// True when some bijection between the two families preserves inclusion.
inline bool order_isomorphic(std::vector<Strategy> a, const std::vector<Strategy>& b) {
  auto leq = [](const Strategy& x, const Strategy& y) {
    return std::includes(y.responses.begin(), y.responses.end(), x.responses.begin(), x.responses.end());
  };
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> perm(a.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i)
      for (std::size_t j = 0; j < a.size() && ok; ++j) ok = leq(a[i], a[j]) == leq(b[perm[i]], b[perm[j]]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline std::string domains_of_bool_and_o_o_o() {
  const auto B = catalog_get("Bool").sds;
  const auto xs = enumerate_strategies(*B);
  std::vector<Strategy> want{Strategy{}, strategy_of_words(*B, {{"?", "tt"}}), strategy_of_words(*B, {{"?", "ff"}})};
  std::sort(want.begin(), want.end());
  if (xs != want) return "D(Bool) has " + std::to_string(xs.size()) + " strategies, not {∅, {? tt}, {? ff}}";
  const auto ys = enumerate_strategies(*catalog_get("o_o_o").sds);
  if (ys.size() != 3) return "D(o_o_o) has " + std::to_string(ys.size()) + " strategies";
  if (!order_isomorphic(xs, ys)) return "D(o_o_o) is not ordered like D(Bool)";
  return {};
}

inline std::string composition_agrees() {
  const auto B = catalog_get("Bool").sds;
  const auto arrow = affine_arrow(B, B);
  const auto all = enumerate_strategies(*arrow);
  if (all.size() != 12) return "D(Bool -o Bool) has " + std::to_string(all.size()) + " strategies, not 12";
  const auto d = make_domain(B);
  std::vector<SymmetricAlgorithm> sym;
  for (const auto& x : all) {
    AffineAlgorithm phi{arrow, x};
    sym.push_back(to_symmetric(phi, d, d));
    if (!same_algorithm(from_symmetric(sym.back()), phi))
      return "roundtrip fails on " + show_strategy(*arrow, x);
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      const auto c = machine_compose(AffineAlgorithm{arrow, all[i]}, AffineAlgorithm{arrow, all[j]});
      if (!same_symmetric(to_symmetric(c, d, d), denotational_compose(sym[i], sym[j])))
        return "compositions differ on " + show_strategy(*arrow, all[i]) + " then " + show_strategy(*arrow, all[j]);
    }
  return {};
}

inline std::string negation_twice() {
  const auto neg = catalog_get("negation").algorithm();
  if (!same_algorithm(machine_compose(neg, neg), copycat_id(catalog_get("Bool").sds)))
    return "negation after negation is not the copycat";
  return {};
}

inline const FlatValue bot = std::nullopt;

inline std::string or_tables() {
  const FunctionTable lor = function_table(catalog_get("lor").algorithm());
  const FunctionTable ror = function_table(catalog_get("ror").algorithm());
  const std::vector<FlatValue> vals{bot, "tt", "ff"};
  for (const auto& y : vals) {
    if (lor.at({bot, y}) != bot) return "lor(⊥, " + show_flat(y) + ") ≠ ⊥";
    if (lor.at({"ff", y}) != y) return "lor(ff, " + show_flat(y) + ") ≠ " + show_flat(y);
    if (ror.at({y, bot}) != bot) return "ror(" + show_flat(y) + ", ⊥) ≠ ⊥";
    if (ror.at({y, "ff"}) != y) return "ror(" + show_flat(y) + ", ff) ≠ " + show_flat(y);
  }
  if (lor.at({"tt", bot}) != "tt") return "lor(tt, ⊥) ≠ tt";
  if (ror.at({bot, "tt"}) != "tt") return "ror(⊥, tt) ≠ tt";
  const auto lsor = catalog_get("lsor").algorithm();
  const auto rsor = catalog_get("rsor").algorithm();
  if (same_algorithm(lsor, rsor)) return "lsor and rsor are the same strategy";
  const FunctionTable& sor = catalog()->get("sor", EntryKind::table).table;
  if (!(function_table(lsor) == sor)) return "lsor does not compute sor";
  if (!(function_table(rsor) == sor)) return "rsor does not compute sor";
  return {};
}

inline std::string por_undefinable() {
  const auto& por = catalog()->get("por", EntryKind::table).table;
  const auto B2 = catalog_get("Bool2").sds;
  const auto found = search_by_table(por, affine_arrow(bang(B2), catalog_get("Bool").sds));
  if (!found.empty()) return std::to_string(found.size()) + " algorithms compute por";
  return {};
}

inline std::string separator_separates() {
  const auto sep = catalog_get("separator").algorithm();
  const Sds& src = *sep.source();
  const Sds& tgt = *sep.target();
  const Strategy tt = strategy_of_words(tgt, {{"?", "tt"}});
  const Strategy ff = strategy_of_words(tgt, {{"?", "ff"}});
  const std::vector<std::pair<std::string, Strategy>> want{{"lsor", tt}, {"lor", tt}, {"rsor", ff}, {"ror", ff}};
  for (const auto& [name, y] : want) {
    const auto& f = catalog_get(name).strategy;
    const Strategy got = apply(sep, promote_point(src, f));
    if (got != y) return "separator maps " + name + " to " + format_set(tgt, got);
  }
  return {};
}

inline std::string isomorphism() {
  const auto ite = catalog_get("ite").algorithm();
  const auto cat = catalog_get("catch").algorithm();
  if (!same_algorithm(machine_compose(ite, cat), copycat_id(catalog_get("Bool").sds)))
    return "catch after if-then-else is not the identity on Bool";
  if (!same_algorithm(machine_compose(cat, ite), copycat_id(catalog_get("o_o_o").sds)))
    return "if-then-else after catch is not the identity on o_o_o";
  return {};
}

/// Strategies of Y = !(!Bool -o o) -o Bool: return v at once, or call the
/// continuation and pass it v.
inline Strategy callcc_argument(const Sds& y, const std::string& v, bool through_continuation) {
  if (!through_continuation) return strategy_of_words(y, {{"req ?", "out " + v}});
  const Word kq{"req ?"};
  const Word kr{"req ?", "valof <?>"};
  Word pass = kr;
  pass.push_back("is <? " + v + ">");
  Word w{"req ?", arrow_label(ArrowTag::valof, word_label(kq))};
  w.push_back(arrow_label(ArrowTag::is, word_label(kr)));
  w.push_back(arrow_label(ArrowTag::valof, word_label(pass)));
  return strategy_of_words(y, {Word(w.begin(), w.begin() + 2), w});
}

inline std::string callcc_behaviour() {
  const auto cc = catalog_get("callcc").algorithm();
  const auto& ty = *catalog_get("callcc").type;
  if (print_type(ty) != "!(!(!Bool -o o) -o Bool) -o Bool") return "callcc has type " + print_type(ty);
  std::vector<Word> words;
  for (NodeId r : cc.strategy.responses) words.push_back(cc.sds().word(r));
  if (!validate_affine(cc.arrow, words).ok()) return "callcc does not validate";
  const Sds& src = *cc.source();
  const Sds& y = *bang_origin(src).base;
  for (const std::string v : {"tt", "ff"})
    for (bool through : {false, true}) {
      const Strategy got = apply(cc, promote_point(src, callcc_argument(y, v, through)));
      const Strategy want = strategy_of_words(*cc.target(), {{"?", v}});
      if (got != want)
        return std::string(through ? "continuation" : "direct") + " path with " + v + " gives " +
               format_set(*cc.target(), got);
    }
  return {};
}

inline std::string error_tables() {
  const FunctionTable l = function_table(catalog_get("lsor_err").algorithm());
  const FunctionTable r = function_table(catalog_get("rsor_err").algorithm());
  if (l.at({kErrorLabel, bot}) != kErrorLabel) return "lsor_err(err, ⊥) = " + show_flat(l.at({kErrorLabel, bot}));
  if (r.at({kErrorLabel, bot}) != bot) return "rsor_err(err, ⊥) = " + show_flat(r.at({kErrorLabel, bot}));
  return {};
}

inline const char* kPaperM = "z M1 M2 (λz1 z2. z1 (λu. t M5 M6) M4)";
inline const char* kPaperN = "λx1 x2 x3. x3 (λy1 y2. y1 N1) N2";
inline const char* kPaperTrace = "M:z; N:λx1 x2 x3.; N:x3; M:λz1 z2.; M:z1; N:λy1 y2.; N:y1; M:λu.; M:t";

/// The head variable without the suffixes added by renaming.
inline std::string base_name(const std::string& v) { return std::regex_replace(v, std::regex("(_[0-9]+)+$"), ""); }

inline std::string token_game() {
  const auto t = token_game_trace(parse_term(kPaperM), parse_term(kPaperN));
  if (show_trace(t) != kPaperTrace) return "trace is " + show_trace(t);
  std::size_t n = 0;
  for (const auto& p : simple_corpus(200)) {
    const auto g = token_game_trace(p.m, p.n);
    const auto h = head_normalize(substitute(p.m, "z", p.n));
    if (g.final_head != base_name(h.head))
      return "pair " + std::to_string(n) + " ends at " + g.final_head + ", head reduction at " + h.head;
    ++n;
  }
  return {};
}

/// Catalog algorithms whose source and target domains are small enough to
/// enumerate.
inline std::vector<std::string> bool_scale_algorithms() {
  std::vector<std::string> out;
  for (const Entry* e : catalog()->all())
    if (e->kind == EntryKind::algorithm) {
      const auto a = e->algorithm();
      if (a.source()->size() <= 200 && a.target()->size() <= 200) out.push_back(e->name);
    }
  return out;
}

inline std::string axiom_suite() {
  const auto names = bool_scale_algorithms();
  if (names.size() < 10) return "only " + std::to_string(names.size()) + " algorithms are small enough";
  for (const auto& n : names) {
    const auto a = catalog_get(n).algorithm();
    const auto report = check_axioms(to_symmetric(a, make_domain(a.source()), make_domain(a.target())));
    for (const auto& e : report.entries)
      if (e.verdict != "pass")
        return n + " " + e.verdict + " " + e.axiom + (e.witnesses.empty() ? "" : ": " + e.witnesses.front());
  }
  return {};
}

struct EqualityVerdict {
  bool equal;
  std::string witness;  // an argument on which the two differ
};

/// Decides equality of two algorithms on !F: strategy equality, with a
/// distinguishing argument from D(F) when they differ.
inline EqualityVerdict decide_equal(const AffineAlgorithm& a, const AffineAlgorithm& b) {
  if (same_algorithm(a, b)) return {true, {}};
  const Sds& src = *a.source();
  const auto& base = bang_origin(src).base;
  for (const auto& f : enumerate_strategies(*base)) {
    const Strategy x = promote_point(src, f);
    if (apply(a, x) != apply(b, x)) return {false, format_set(*base, f)};
  }
  return {false, "none: the two differ only intensionally"};
}

inline std::string decidability() {
  const auto sep = catalog_get("separator").algorithm();
  const auto probe = catalog_get("strictness_probe").algorithm();
  if (!decide_equal(sep, sep).equal) return "separator differs from itself";
  const auto v = decide_equal(sep, probe);
  if (v.equal) return "separator and strictness_probe judged equal";
  if (v.witness.empty()) return "no verdict detail";
  return {};
}

}  // namespace acceptance

inline std::vector<AcceptanceCheck> acceptance_checks() {
  using namespace acceptance;
  return {
      {"D(Bool) and D(o_o_o) have three strategies, ordered alike", 1, domains_of_bool_and_o_o_o},
      {"machine and denotational composition agree on D(Bool -o Bool)^2", 10, composition_agrees},
      {"negation composed with itself is the copycat on Bool", 1, negation_twice},
      {"lor and ror tables; lsor and rsor both compute sor", 5, or_tables},
      {"no sequential algorithm computes por", 300, por_undefinable},
      {"the separator maps lsor to tt and rsor to ff", 1, separator_separates},
      {"catch and if-then-else are inverse isomorphisms", 1, isomorphism},
      {"call-cc validates and returns the boolean on both paths", 5, callcc_behaviour},
      {"lsor_err(err, bot) = err and rsor_err(err, bot) = bot", 1, error_tables},
      {"token game trace and head reduction agree", 30, token_game},
      {"every Bool-scale catalog algorithm satisfies the axioms", 60, axiom_suite},
      {"equality at (Bool2 -> Bool) -> Bool is decided", 60, decidability},
  };
}

inline AcceptanceResult run_check(const AcceptanceCheck& c) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  try {
    detail = c.run();
  } catch (const std::exception& e) {
    detail = std::string("threw ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (detail.empty() && secs > c.limit_seconds)
    detail = "took " + std::to_string(secs) + "s, limit " + std::to_string(c.limit_seconds) + "s";
  return {c.name, detail.empty(), detail, secs};
}

}  // namespace seqalg
