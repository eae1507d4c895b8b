#pragma once

// Exhaustive checks of the symmetric-algorithm axioms over finite domains.
// When g(α') is undefined, x is taken to win against it with empty play.

#include <optional>
#include <string>
#include <vector>

#include "seqalg/symmetric.hpp"

namespace seqalg {

struct AxiomEntry {
  std::string axiom;
  std::vector<std::string> witnesses;
  std::string verdict;  // "pass", "fail" or "violated"
};

struct AxiomReport {
  std::vector<AxiomEntry> entries;
  bool ok() const {
    for (const auto& e : entries)
      if (e.verdict != "pass") return false;
    return true;
  }
  std::vector<AxiomEntry> violations(const std::string& axiom) const {
    std::vector<AxiomEntry> out;
    for (const auto& e : entries)
      if (e.axiom == axiom && e.verdict == "violated") out.push_back(e);
    return out;
  }
};

namespace detail {

class AxiomChecker {
 public:
  AxiomChecker(const SymmetricAlgorithm& fg, std::size_t max_listed)
      : fg_(fg), src_(*fg.source), tgt_(*fg.target), max_(max_listed) {}

  AxiomReport run() {
    check("L", [&] { left(); });
    check("R", [&] { right(); });
    check("LS", [&] { left_sequential(); });
    check("RS", [&] { right_sequential(); });
    check("affine-f", [&] { affine_f(); });
    check("affine-g", [&] { affine_g(); });
    return std::move(report_);
  }

 private:
  const Sds& S() const { return *src_.sds; }
  const Sds& T() const { return *tgt_.sds; }
  std::string pt(const Strategy& x) const { return "x=" + format_set(S(), x); }
  std::string tpt(const Strategy& y) const { return "y'=" + format_set(T(), y); }
  std::string cp(const CounterStrategy& a) const { return "α'=" + format_set(T(), a); }
  std::string scp(const CounterStrategy& a) const { return "α=" + format_set(S(), a); }

  // x wins against g(α'), with the undefined convention.
  bool wins_g(const Strategy& x, const std::optional<CounterStrategy>& g) const {
    return !g || wins(S(), x, *g);
  }
  Strategy play_g(const Strategy& x, const std::optional<CounterStrategy>& g) const {
    if (!g) return {};
    return response_prefixes(S(), play(S(), x, *g).maximal);
  }

  template <class Body>
  void check(const std::string& axiom, Body body) {
    axiom_ = axiom;
    listed_ = 0;
    failed_ = false;
    body();
    report_.entries.push_back(AxiomEntry{axiom, {}, failed_ ? "fail" : "pass"});
  }
  void violated(std::vector<std::string> witnesses) {
    failed_ = true;
    if (listed_++ < max_) report_.entries.push_back(AxiomEntry{axiom_, std::move(witnesses), "violated"});
  }

  // m(f, x, α'): least y ⊆ x with f(y) winning against α'.
  std::optional<Strategy> m_f(const Strategy& x, const CounterStrategy& a) {
    try {
      return stability_witness(src_, T(), tabulated(fg_), x, a);
    } catch (const Error& e) {
      violated({pt(x), cp(a), e.what()});
      return std::nullopt;
    }
  }

  // m(g, α', x): least β' ⊆ α' with g(β') defined and losing x.
  std::optional<CounterStrategy> m_g(const CounterStrategy& a, const Strategy& x) {
    std::vector<const CounterStrategy*> good;
    for (std::size_t j = 0; j < tgt_.copoints.size(); ++j) {
      const auto& b = tgt_.copoints[j];
      if (is_subset(b, a) && fg_.g[j] && !wins(S(), x, *fg_.g[j])) good.push_back(&b);
    }
    std::vector<const CounterStrategy*> minimal;
    for (const auto* b : good) {
      bool min = true;
      for (const auto* c : good)
        if (c != b && is_subset(*c, *b)) min = false;
      if (min) minimal.push_back(b);
    }
    if (minimal.size() != 1) {
      violated({cp(a), pt(x), "no least witness for g"});
      return std::nullopt;
    }
    return *minimal.front();
  }

  void left() {
    for (const auto& x : src_.points)
      for (std::size_t j = 0; j < tgt_.copoints.size(); ++j) {
        const auto& a = tgt_.copoints[j];
        if (!wins(T(), fg_.f_of(x), a)) continue;
        const auto& g = fg_.g[j];
        if (!wins_g(x, g)) {
          violated({pt(x), cp(a), "x loses against g(α')"});
          continue;
        }
        auto m = m_f(x, a);
        if (m && *m != play_g(x, g)) violated({pt(x), cp(a), "m(f,x,α') differs from the play"});
      }
  }

  void right() {
    for (std::size_t j = 0; j < tgt_.copoints.size(); ++j) {
      const auto& a = tgt_.copoints[j];
      const auto& g = fg_.g[j];
      if (!g) continue;
      for (const auto& x : src_.points) {
        if (wins(S(), x, *g)) continue;
        const auto& fx = fg_.f_of(x);
        if (wins(T(), fx, a)) {
          violated({cp(a), pt(x), "f(x) wins against α'"});
          continue;
        }
        auto m = m_g(a, x);
        if (m && *m != query_prefixes(T(), play(T(), fx, a).maximal))
          violated({cp(a), pt(x), "m(g,α',x) differs from the play"});
      }
    }
  }

  void left_sequential() {
    for (const auto& x : src_.points)
      for (std::size_t j = 0; j < tgt_.copoints.size(); ++j) {
        const auto& a = tgt_.copoints[j];
        if (wins(T(), fg_.f_of(x), a)) continue;
        std::vector<const Strategy*> ups;
        for (const auto& y : src_.points)
          if (y != x && is_subset(x, y) && wins(T(), fg_.f_of(y), a)) ups.push_back(&y);
        if (ups.empty()) continue;
        const auto& g = fg_.g[j];
        if (wins_g(x, g)) {
          violated({pt(x), cp(a), "x does not lose against g(α')"});
          continue;
        }
        const auto alpha = query_prefixes(S(), play(S(), x, *g).maximal);
        for (const auto* y : ups)
          if (!wins(S(), *y, alpha)) {
            violated({pt(x), cp(a), scp(alpha), "not a sequentiality index"});
            break;
          }
      }
  }

  void right_sequential() {
    for (std::size_t j = 0; j < tgt_.copoints.size(); ++j) {
      const auto& a = tgt_.copoints[j];
      for (const auto& x : src_.points) {
        if (!wins_g(x, fg_.g[j])) continue;
        std::vector<const CounterStrategy*> ups;
        for (std::size_t k = 0; k < tgt_.copoints.size(); ++k) {
          const auto& b = tgt_.copoints[k];
          if (k != j && is_subset(a, b) && fg_.g[k] && !wins(S(), x, *fg_.g[k])) ups.push_back(&b);
        }
        if (ups.empty()) continue;
        const auto& fx = fg_.f_of(x);
        if (!wins(T(), fx, a)) {
          violated({cp(a), pt(x), "f(x) does not win against α'"});
          continue;
        }
        const auto y = response_prefixes(T(), play(T(), fx, a).maximal);
        for (const auto* b : ups)
          if (wins(T(), y, *b)) {
            violated({cp(a), pt(x), tpt(y), "not a sequentiality index"});
            break;
          }
      }
    }
  }

  void affine_f() {
    for (std::size_t i = 0; i < src_.points.size(); ++i)
      for (std::size_t k = i + 1; k < src_.points.size(); ++k) {
        const auto& x = src_.points[i];
        const auto& y = src_.points[k];
        auto it = src_.point_index.find(strategy_union(x, y));
        if (it == src_.point_index.end()) continue;
        if (fg_.f[it->second] != strategy_union(fg_.f[i], fg_.f[k]))
          violated({pt(x), pt(y), "f(x ∨ y) differs from f(x) ∨ f(y)"});
      }
  }

  void affine_g() {
    auto as_set = [](const std::optional<CounterStrategy>& g) { return g ? *g : CounterStrategy{}; };
    for (std::size_t i = 0; i < tgt_.copoints.size(); ++i)
      for (std::size_t k = i + 1; k < tgt_.copoints.size(); ++k) {
        const auto& a = tgt_.copoints[i];
        const auto& b = tgt_.copoints[k];
        auto it = tgt_.copoint_index.find(counter_union(a, b));
        if (it == tgt_.copoint_index.end()) continue;
        if (as_set(fg_.g[it->second]) != counter_union(as_set(fg_.g[i]), as_set(fg_.g[k])))
          violated({cp(a), cp(b), "g(α ∨ β) differs from g(α) ∨ g(β)"});
      }
  }

  const SymmetricAlgorithm& fg_;
  const Domain& src_;
  const Domain& tgt_;
  std::size_t max_;
  std::string axiom_;
  std::size_t listed_ = 0;
  bool failed_ = false;
  AxiomReport report_;
};

}  // namespace detail

/// Checks (L), (R), (LS), (RS) and affineness of f and g; lists up to
/// `max_listed` violations per axiom with their witnesses.
inline AxiomReport check_axioms(const SymmetricAlgorithm& fg, std::size_t max_listed = 20) {
  return detail::AxiomChecker(fg, max_listed).run();
}

}  // namespace seqalg
