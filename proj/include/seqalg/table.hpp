#pragma once

// Function tables over flat types and products of flat types, and the
// search for sequential algorithms computing a given table.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqalg/affine.hpp"
#include "seqalg/symmetric.hpp"

namespace seqalg {

/// A value of a flat type, nullopt standing for ⊥.
using FlatValue = std::optional<std::string>;
using FlatTuple = std::vector<FlatValue>;

struct FunctionTable {
  std::string name;
  std::size_t arity = 0;
  std::map<FlatTuple, FlatValue> rows;

  /// The listed result, or else the common result of the listed rows below
  /// t (⊥ if there are none): tables are completed by monotonicity.
  FlatValue at(const FlatTuple& t) const {
    if (t.size() != arity) throw Error(ErrorCode::type_mismatch, name + ": wrong number of arguments");
    if (auto it = rows.find(t); it != rows.end()) return it->second;
    FlatValue out;
    for (const auto& [u, r] : rows) {
      if (!r) continue;
      bool below = true;
      for (std::size_t i = 0; i < u.size() && below; ++i) below = !u[i] || u[i] == t[i];
      if (!below) continue;
      if (out && out != r) throw Error(ErrorCode::violation, name + ": rows disagree above a common argument");
      out = r;
    }
    return out;
  }
  bool operator==(const FunctionTable& o) const { return arity == o.arity && rows == o.rows; }
};

inline std::string show_flat(const FlatValue& v) { return v ? *v : "bot"; }

inline std::string show_tuple(const FlatTuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + show_flat(t[i]);
  return out + ")";
}

/// One root cell whose children are all maximal values.
inline bool is_flat(const Sds& s) {
  if (s.roots().size() != 1) return false;
  for (NodeId v : s.children(s.roots().front()))
    if (!s.children(v).empty()) return false;
  return true;
}

/// The flat factors of a flat type or of a product of flat types.
inline std::vector<SdsPtr> flat_factors(const SdsPtr& s) {
  if (const auto* p = s->origin_as<ProductOrigin>()) {
    for (const auto& f : p->factors)
      if (!is_flat(*f)) throw Error(ErrorCode::type_mismatch, f->name() + " is not flat");
    return p->factors;
  }
  if (!is_flat(*s)) throw Error(ErrorCode::type_mismatch, s->name() + " is not flat");
  return {s};
}

inline std::vector<std::string> flat_values(const Sds& flat) {
  std::vector<std::string> out;
  for (NodeId v : flat.children(flat.roots().front())) out.push_back(flat.label(v));
  return out;
}

/// Every tuple over ⊥ and the factors' values, ⊥ first, in value order.
inline std::vector<FlatTuple> all_tuples(const std::vector<SdsPtr>& factors) {
  std::vector<FlatTuple> out{{}};
  for (const auto& f : factors) {
    std::vector<FlatTuple> next;
    for (const auto& t : out) {
      next.push_back(t);
      next.back().push_back(std::nullopt);
      for (const auto& v : flat_values(*f)) {
        next.push_back(t);
        next.back().push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

/// The strategy of s (flat or a product of flats) holding the tuple's values.
inline Strategy point_of(const SdsPtr& s, const FlatTuple& t) {
  const auto factors = flat_factors(s);
  const bool prod = s->origin_as<ProductOrigin>() != nullptr;
  if (t.size() != factors.size()) throw Error(ErrorCode::type_mismatch, "tuple arity differs");
  std::vector<NodeId> rs;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!t[i]) continue;
    const Sds& f = *factors[i];
    Word w{f.label(f.roots().front()), *t[i]};
    if (prod)
      for (auto& m : w) m = product_label(m, i + 1);
    NodeId n = s->find(w);
    if (n < 0) throw Error(ErrorCode::type_mismatch, "'" + *t[i] + "' is not a value of " + f.name());
    rs.push_back(n);
  }
  std::sort(rs.begin(), rs.end());
  return Strategy{rs};
}

inline FlatTuple tuple_of(const SdsPtr& s, const Strategy& x) {
  const auto factors = flat_factors(s);
  const auto* p = s->origin_as<ProductOrigin>();
  FlatTuple t(factors.size());
  for (NodeId r : x.responses) {
    if (p) {
      auto [i, inner] = p->component.at(r);
      t[i] = factors[i]->label(inner);
    } else {
      t[0] = s->label(r);
    }
  }
  return t;
}

/// The function computed by an algorithm whose source is flat (or !flat, or
/// a product of flats under !) and whose target is flat.
inline FunctionTable function_table(const AffineAlgorithm& phi, std::string name = {}) {
  const SdsPtr& src = phi.source();
  const auto* b = src->origin_as<BangOrigin>();
  const SdsPtr& base = b ? b->base : src;
  flat_factors(phi.target());
  FunctionTable t{std::move(name), flat_factors(base).size(), {}};
  for (const auto& tuple : all_tuples(flat_factors(base))) {
    Strategy x = point_of(base, tuple);
    Strategy y = apply(phi, b ? promote_point(*src, x) : x);
    t.rows[tuple] = tuple_of(phi.target(), y)[0];
  }
  return t;
}

/// Tabulates `fn` over every tuple of the given factors.
template <class Fn>
FunctionTable make_table(std::string name, const std::vector<SdsPtr>& factors, Fn fn) {
  FunctionTable t{std::move(name), factors.size(), {}};
  for (const auto& tuple : all_tuples(factors)) t.rows[tuple] = fn(tuple);
  return t;
}

/// A pair t ≤ u whose images are not ordered, if any.
inline std::optional<std::string> monotonicity_violation(const FunctionTable& t) {
  auto below = [](const FlatTuple& a, const FlatTuple& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] && a[i] != b[i]) return false;
    return true;
  };
  for (const auto& [a, ra] : t.rows)
    for (const auto& [b, rb] : t.rows)
      if (ra && below(a, b) && ra != rb)
        return show_tuple(a) + " -> " + show_flat(ra) + " but " + show_tuple(b) + " -> " + show_flat(rb);
  return std::nullopt;
}

/// The table as a function on strategies of `source` into `target`.
inline StrategyFunction table_function(const FunctionTable& t, SdsPtr source, SdsPtr target) {
  return [t, source, target](const Strategy& x) {
    return point_of(target, FlatTuple{t.at(tuple_of(source, x))});
  };
}

// ---------------------------------------------------------------------------
// Search.

/// All strategies of `arrow` (source flat, a product of flats, or ! of one;
/// target flat) computing the table. Explores the arrow once, pruning every
/// branch that contradicts some point reaching it.
inline std::vector<Strategy> search_by_table(const FunctionTable& table, const SdsPtr& arrow,
                                             std::size_t budget = kDefaultBudget) {
  const auto& o = arrow_origin(*arrow);
  const auto* b = o.source->origin_as<BangOrigin>();
  const SdsPtr& base = b ? b->base : o.source;
  flat_factors(o.target);
  struct Point {
    FlatValue out;
    Strategy x;  // in the arrow's source
  };
  std::vector<Point> points;
  for (const auto& tuple : all_tuples(flat_factors(base))) {
    Strategy x = point_of(base, tuple);
    points.push_back(Point{table.at(tuple), b ? promote_point(*o.source, x) : x});
  }
  const Sds& src = *o.source;
  const Sds& tgt = *o.target;
  using Partial = std::vector<NodeId>;

  auto solve = [&](auto& self, NodeId q, const std::vector<const Point*>& reach) -> std::vector<Partial> {
    std::vector<Partial> out;
    bool all_bottom = true;
    for (const auto* p : reach) all_bottom = all_bottom && !p->out;
    if (all_bottom) out.push_back({});
    for (NodeId m : arrow->children(q)) {
      if (o.tag[m] == ArrowTag::output) {
        const std::string& v = tgt.label(o.target_proj[m]);
        bool ok = true;
        for (const auto* p : reach) ok = ok && p->out == v;
        if (ok) out.push_back({m});
        continue;
      }
      // valof c: points leaving c unanswered stall here and must be ⊥.
      const NodeId c = o.source_proj[m];
      bool ok = true;
      for (const auto* p : reach) {
        bool answered = false;
        for (NodeId v : src.children(c)) answered = answered || p->x.contains(v);
        if (!answered && p->out) ok = false;
      }
      if (!ok) continue;
      std::vector<Partial> acc{{m}};
      for (NodeId next : arrow->children(m)) {
        std::vector<const Point*> sub;
        for (const auto* p : reach)
          if (p->x.contains(o.source_proj[next])) sub.push_back(p);
        auto below = self(self, next, sub);
        std::vector<Partial> grown;
        for (const auto& a : acc)
          for (const auto& s : below) {
            grown.push_back(a);
            grown.back().insert(grown.back().end(), s.begin(), s.end());
            if (grown.size() > budget) throw Error(ErrorCode::size_limit, "search exceeded its budget");
          }
        acc = std::move(grown);
        if (acc.empty()) break;
      }
      out.insert(out.end(), acc.begin(), acc.end());
      if (out.size() > budget) throw Error(ErrorCode::size_limit, "search exceeded its budget");
    }
    return out;
  };

  std::vector<const Point*> all;
  for (const auto& p : points) all.push_back(&p);
  std::vector<Strategy> found;
  for (NodeId root : arrow->roots())
    for (auto& partial : solve(solve, root, all)) {
      std::sort(partial.begin(), partial.end());
      found.push_back(Strategy{partial});
    }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

}  // namespace seqalg
