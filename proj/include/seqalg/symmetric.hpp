#pragma once

// The symmetric presentation of affine algorithms: a pair (f, g) of a
// function on strategies and a partial function on counter-strategies, both
// tabulated over the finite domains of the source and target.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqalg/affine.hpp"

namespace seqalg {

/// D(S) and D⊥(S), enumerated once and indexed.
struct Domain {
  SdsPtr sds;
  std::vector<Strategy> points;
  std::vector<CounterStrategy> copoints;
  std::map<Strategy, std::size_t> point_index;
  std::map<CounterStrategy, std::size_t> copoint_index;

  std::size_t index_of(const Strategy& x) const {
    auto it = point_index.find(x);
    if (it == point_index.end()) throw Error(ErrorCode::violation, "not a strategy of " + sds->name());
    return it->second;
  }
  std::size_t index_of(const CounterStrategy& a) const {
    auto it = copoint_index.find(a);
    if (it == copoint_index.end())
      throw Error(ErrorCode::violation, "not a counter-strategy of " + sds->name());
    return it->second;
  }
};
using DomainPtr = std::shared_ptr<const Domain>;

inline DomainPtr make_domain(SdsPtr s, std::size_t budget = kDefaultBudget) {
  auto d = std::make_shared<Domain>();
  d->sds = s;
  d->points = enumerate_strategies(*s, budget);
  d->copoints = enumerate_counter_strategies(*s, budget);
  for (std::size_t i = 0; i < d->points.size(); ++i) d->point_index[d->points[i]] = i;
  for (std::size_t i = 0; i < d->copoints.size(); ++i) d->copoint_index[d->copoints[i]] = i;
  return d;
}

struct SymmetricAlgorithm {
  DomainPtr source;
  DomainPtr target;
  std::vector<Strategy> f;                         // indexed like source->points
  std::vector<std::optional<CounterStrategy>> g;   // indexed like target->copoints

  const Strategy& f_of(const Strategy& x) const { return f[source->index_of(x)]; }
  const std::optional<CounterStrategy>& g_of(const CounterStrategy& a) const {
    return g[target->index_of(a)];
  }
};

inline SymmetricAlgorithm to_symmetric(const AffineAlgorithm& phi, DomainPtr source, DomainPtr target) {
  SymmetricAlgorithm fg{source, target, {}, {}};
  for (const auto& x : source->points) fg.f.push_back(apply(phi, x));
  for (const auto& a : target->copoints) fg.g.push_back(coapply(phi, a));
  return fg;
}

/// Rebuilds the affine algorithm: at a query s of the arrow with source
/// projection x and target projection α', output v' when tgt(s)v' ∈ f(x),
/// ask c when src(s)c ∈ g(α').
inline AffineAlgorithm from_symmetric(const SymmetricAlgorithm& fg) {
  const Sds& src = *fg.source->sds;
  const Sds& tgt = *fg.target->sds;
  auto arrow = affine_arrow(fg.source->sds, fg.target->sds);
  const auto& o = arrow_origin(*arrow);
  std::vector<NodeId> rs;
  std::vector<NodeId> stack(arrow->roots().rbegin(), arrow->roots().rend());
  while (!stack.empty()) {
    NodeId q = stack.back();
    stack.pop_back();
    const NodeId sp = o.source_proj[q];
    const NodeId tp = o.target_proj[q];
    const Strategy& fx = fg.f_of(response_prefixes(src, sp));
    const auto& ga = fg.g_of(query_prefixes(tgt, tp));
    NodeId chosen = kAbsent;
    for (NodeId m : arrow->children(q)) {
      const bool take = o.tag[m] == ArrowTag::output ? fx.contains(o.target_proj[m])
                                                     : ga && ga->contains(o.source_proj[m]);
      if (!take) continue;
      if (chosen != kAbsent)
        throw Error(ErrorCode::violation, "f and g disagree at " + arrow->show(q) + ": both " +
                                              arrow->label(chosen) + " and " + arrow->label(m));
      chosen = m;
    }
    if (chosen == kAbsent) continue;
    rs.push_back(chosen);
    for (auto it = arrow->children(chosen).rbegin(); it != arrow->children(chosen).rend(); ++it)
      stack.push_back(*it);
  }
  return AffineAlgorithm{arrow, validate_strategy(*arrow, rs).value()};
}

/// (f'', g'') = (f' ∘ f, g ∘ g'), with g'' undefined wherever g' is.
inline SymmetricAlgorithm denotational_compose(const SymmetricAlgorithm& first,
                                               const SymmetricAlgorithm& second) {
  if (!first.target->sds->same_positions(*second.source->sds))
    throw Error(ErrorCode::type_mismatch, "cannot compose: " + first.target->sds->name() +
                                              " differs from " + second.source->sds->name());
  SymmetricAlgorithm out{first.source, second.target, {}, {}};
  for (const auto& y : first.f) out.f.push_back(second.f[second.source->index_of(y)]);
  for (const auto& b : second.g)
    out.g.push_back(b ? first.g[first.target->index_of(*b)] : std::nullopt);
  return out;
}

// ---------------------------------------------------------------------------
// Stability and sequentiality of functions given extensionally.

using StrategyFunction = std::function<Strategy(const Strategy&)>;

inline StrategyFunction tabulated(const SymmetricAlgorithm& fg) {
  return [&fg](const Strategy& x) { return fg.f_of(x); };
}

/// The least y ⊆ x with f(y) winning against α', or nullopt if f(x) does
/// not win. Throws stability-failure when the minimal such y are several.
inline std::optional<Strategy> stability_witness(const Domain& source, const Sds& target,
                                                 const StrategyFunction& f, const Strategy& x,
                                                 const CounterStrategy& a) {
  if (!wins(target, f(x), a)) return std::nullopt;
  std::vector<Strategy> good;
  for (const auto& y : source.points)
    if (is_subset(y, x) && wins(target, f(y), a)) good.push_back(y);
  std::vector<Strategy> minimal;
  for (const auto& y : good) {
    bool min = true;
    for (const auto& z : good)
      if (z != y && is_subset(z, y)) min = false;
    if (min) minimal.push_back(y);
  }
  if (minimal.size() != 1) {
    std::string which;
    for (const auto& m : minimal) which += " " + format_set(*source.sds, m);
    throw Error(ErrorCode::stability_failure, "no least witness below " +
                                                  format_set(*source.sds, x) + ":" + which);
  }
  return minimal.front();
}

/// A counter-strategy α of the source that x loses to and that every
/// y ⊇ x with f(y) beating α' beats; nullopt if there is none or if the
/// pair (x, α') is not eligible (f(x) already wins, or no extension wins).
inline std::optional<CounterStrategy> sequentiality_index(const Domain& source, const Sds& target,
                                                          const StrategyFunction& f,
                                                          const Strategy& x,
                                                          const CounterStrategy& a) {
  if (wins(target, f(x), a)) return std::nullopt;
  std::vector<const Strategy*> ups;
  for (const auto& y : source.points)
    if (is_subset(x, y) && wins(target, f(y), a)) ups.push_back(&y);
  if (ups.empty()) return std::nullopt;
  const Sds& s = *source.sds;
  for (const auto& alpha : source.copoints) {
    if (wins(s, x, alpha)) continue;
    bool ok = true;
    for (const auto* y : ups)
      if (!wins(s, *y, alpha)) {
        ok = false;
        break;
      }
    if (ok) return alpha;
  }
  return std::nullopt;
}

}  // namespace seqalg
