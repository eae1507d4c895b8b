#pragma once

// Compound sds's: product (juxtaposition), affine arrow, exponential, the
// polarity shift and the decomposition of the arrow into a par of a shifted
// dual and the target.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqalg/sds.hpp"

namespace seqalg {

// ---------------------------------------------------------------------------
// Word restriction.

/// Keeps the moves accepted by `keep`, in order.
template <class Pred>
Word restrict(const Word& w, Pred keep) {
  Word out;
  for (const auto& m : w)
    if (keep(m)) out.push_back(m);
  return out;
}

inline std::string unwrap_label(std::string_view s) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')' && --depth == 0 && i + 1 != s.size()) return std::string(s);
    }
    return std::string(s.substr(1, s.size() - 2));
  }
  return std::string(s);
}

/// Splits "tag inner" arrow labels; nullopt for labels without an arrow tag.
inline std::optional<std::pair<ArrowTag, std::string>> split_arrow_label(std::string_view label) {
  auto sp = label.find(' ');
  if (sp == std::string_view::npos) return std::nullopt;
  auto tag = parse_tag(label.substr(0, sp));
  if (!tag) return std::nullopt;
  return std::make_pair(*tag, unwrap_label(label.substr(sp + 1)));
}

inline bool is_source_tag(ArrowTag t) { return t == ArrowTag::valof || t == ArrowTag::is; }

/// Projection of an arrow word on its source (tags stripped).
inline Word restrict_to_source(const Word& w) {
  Word out;
  for (const auto& m : w)
    if (auto split = split_arrow_label(m); split && is_source_tag(split->first))
      out.push_back(split->second);
  return out;
}

inline Word restrict_to_target(const Word& w) {
  Word out;
  for (const auto& m : w)
    if (auto split = split_arrow_label(m); split && !is_source_tag(split->first))
      out.push_back(split->second);
  return out;
}

// ---------------------------------------------------------------------------
// Product.

/// Juxtaposition of the factors' forests; factor i's labels get suffix ".i".
/// No interleaving: every position lives in exactly one factor.
inline SdsPtr product(const std::vector<SdsPtr>& factors, std::string name = {}) {
  if (name.empty()) {
    for (std::size_t i = 0; i < factors.size(); ++i)
      name += (i ? " * " : "") + factors[i]->name();
  }
  auto s = std::make_shared<Sds>(name);
  ProductOrigin origin{factors, {}};
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Sds& f = *factors[i];
    std::vector<NodeId> image(f.size());
    for (NodeId n = 0; n < static_cast<NodeId>(f.size()); ++n) {
      NodeId p = f.parent(n);
      image[n] = s->add(p == kEpsilon ? kEpsilon : image[p], product_label(f.label(n), i + 1),
                        f.kind(n));
      origin.component.resize(s->size());
      origin.component[image[n]] = {i, n};
    }
  }
  s->set_origin(std::move(origin));
  return s;
}

inline SdsPtr product(SdsPtr a, SdsPtr b, std::string name = {}) {
  return product(std::vector<SdsPtr>{std::move(a), std::move(b)}, std::move(name));
}

// ---------------------------------------------------------------------------
// Affine arrow.

inline SdsPtr affine_arrow(SdsPtr source, SdsPtr target, std::size_t budget = kDefaultBudget) {
  const Sds& src = *source;
  const Sds& tgt = *target;
  auto s = std::make_shared<Sds>(wrap_label(src.name()) + " -o " + wrap_label(tgt.name()));
  ArrowOrigin origin{source, target, {}, {}, {}, {}};

  auto add = [&](NodeId parent, ArrowTag tag, NodeId inner, NodeId sp, NodeId tp) {
    const Sds& comp = is_source_tag(tag) ? src : tgt;
    const MoveKind kind =
        (tag == ArrowTag::request || tag == ArrowTag::is) ? MoveKind::cell : MoveKind::value;
    NodeId n = s->add(parent, arrow_label(tag, comp.label(inner)), kind);
    if (s->size() > budget) throw Error(ErrorCode::size_limit, "arrow " + s->name());
    origin.tag.push_back(tag);
    origin.inner.push_back(inner);
    origin.source_proj.push_back(sp);
    origin.target_proj.push_back(tp);
    return n;
  };

  std::vector<NodeId> stack;
  for (NodeId c : tgt.roots()) stack.push_back(add(kEpsilon, ArrowTag::request, c, kEpsilon, c));
  std::reverse(stack.begin(), stack.end());
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    const NodeId sp = origin.source_proj[n];
    const NodeId tp = origin.target_proj[n];
    const ArrowTag last = origin.tag[n];
    std::vector<NodeId> born;
    if (s->kind(n) == MoveKind::cell) {
      if (tgt.is_query(tp))
        for (NodeId v : tgt.children(tp)) born.push_back(add(n, ArrowTag::output, v, sp, v));
      if (sp == kEpsilon || src.is_response(sp))
        for (NodeId c : src.children(sp)) born.push_back(add(n, ArrowTag::valof, c, c, tp));
    } else {
      if (tgt.is_response(tp) && last != ArrowTag::valof)
        for (NodeId c : tgt.children(tp)) born.push_back(add(n, ArrowTag::request, c, sp, c));
      if (src.is_query(sp))
        for (NodeId v : src.children(sp)) born.push_back(add(n, ArrowTag::is, v, v, tp));
    }
    stack.insert(stack.end(), born.rbegin(), born.rend());
  }
  s->set_origin(std::move(origin));
  return s;
}

inline const ArrowOrigin& arrow_origin(const Sds& s) {
  const auto* a = s.origin_as<ArrowOrigin>();
  if (!a) throw Error(ErrorCode::type_mismatch, s.name() + " is not an arrow sds");
  return *a;
}

inline NodeId source_projection(const Sds& arrow, NodeId n) {
  return n == kEpsilon ? kEpsilon : arrow_origin(arrow).source_proj.at(n);
}

inline NodeId target_projection(const Sds& arrow, NodeId n) {
  return n == kEpsilon ? kEpsilon : arrow_origin(arrow).target_proj.at(n);
}

/// Checks a word against the defining clauses of the arrow's positions,
/// without consulting the generated arrow forest.
inline std::optional<Violation> arrow_word_violation(const Sds& source, const Sds& target,
                                                     const Word& w) {
  const auto subject = join_word(w);
  if (w.empty()) return Violation{"non-empty", subject, ""};
  bool prev_cell = false;
  std::optional<ArrowTag> prev;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto split = split_arrow_label(w[i]);
    if (!split) return Violation{"tagged moves", subject, "untagged move " + w[i]};
    const ArrowTag tag = split->first;
    const bool cell = tag == ArrowTag::request || tag == ArrowTag::is;
    const Sds& comp = is_source_tag(tag) ? source : target;
    auto k = comp.label_kind(split->second);
    const MoveKind want = (tag == ArrowTag::request || tag == ArrowTag::valof) ? MoveKind::cell
                                                                                : MoveKind::value;
    if (!k || *k != want) return Violation{"tagged moves", subject, "bad move " + w[i]};
    if (i == 0 && tag != ArrowTag::request)
      return Violation{"request start", subject, "starts with " + w[i]};
    if (i > 0 && cell == prev_cell) return Violation{"alternation", subject, w[i - 1] + " " + w[i]};
    if (prev == ArrowTag::valof && tag == ArrowTag::request)
      return Violation{"adjacency", subject, "valof followed by request"};
    prev_cell = cell;
    prev = tag;
  }
  if (target.find(restrict_to_target(w)) == kAbsent || restrict_to_target(w).empty())
    return Violation{"target projection", subject, join_word(restrict_to_target(w))};
  if (source.find(restrict_to_source(w)) == kAbsent)
    return Violation{"source projection", subject, join_word(restrict_to_source(w))};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Exponential.

inline const BangOrigin& bang_origin(const Sds& s) {
  const auto* b = s.origin_as<BangOrigin>();
  if (!b) throw Error(ErrorCode::type_mismatch, s.name() + " is not an exponential");
  return *b;
}

/// !S: cells are queries of S, values its responses; a position accumulates
/// a strategy of S, never repeating a response.
inline SdsPtr bang(SdsPtr base, std::size_t budget = kDefaultBudget) {
  const Sds& b = *base;
  auto s = std::make_shared<Sds>("!" + wrap_label(b.name()));
  BangOrigin origin{base, {}, {}};
  auto record = [&](NodeId n, NodeId base_node, Strategy acc) {
    if (s->size() > budget) throw Error(ErrorCode::size_limit, "exponential " + s->name());
    origin.base_node.resize(s->size(), kEpsilon);
    origin.accumulated.resize(s->size());
    origin.base_node[n] = base_node;
    origin.accumulated[n] = std::move(acc);
  };
  auto go = [&](auto& self, NodeId rho, const Strategy& x) -> void {
    for (NodeId q : accessible(b, x)) {
      NodeId cell = s->add(rho, word_label(b.word(q)), MoveKind::cell);
      record(cell, q, x);
      for (NodeId v : b.children(q)) {
        if (x.contains(v)) continue;
        auto grown = validate_strategy(b, [&] {
          auto r = x.responses;
          r.push_back(v);
          return r;
        }());
        if (!grown) continue;
        NodeId value = s->add(cell, word_label(b.word(v)), MoveKind::value);
        record(value, v, grown.value());
        self(self, value, grown.value());
      }
    }
  };
  go(go, kEpsilon, Strategy{});
  s->set_origin(std::move(origin));
  return s;
}

/// The strategy of the base accumulated along a response of !S.
inline Strategy strategy_of_response(const Sds& bang_sds, NodeId rho) {
  const auto& origin = bang_origin(bang_sds);
  if (rho == kEpsilon) return {};
  if (!bang_sds.is_response(rho))
    throw Error(ErrorCode::not_a_response, "'" + bang_sds.show(rho) + "'");
  return origin.accumulated.at(rho);
}

// ---------------------------------------------------------------------------
// Polarized structures: duals and the shift. These are not sds's (they may
// start with a player move) and sds operations do not accept them.

enum class Polarity : std::uint8_t { opponent, player };

struct Polarized {
  struct Node {
    std::string label;
    Polarity polarity;
    NodeId parent;
    std::vector<NodeId> children;
  };
  std::string name;
  std::vector<Node> nodes;
  std::vector<NodeId> roots;

  NodeId add(NodeId parent, std::string label, Polarity p) {
    const auto id = static_cast<NodeId>(nodes.size());
    nodes.push_back(Node{std::move(label), p, parent, {}});
    (parent == kEpsilon ? roots : nodes[parent].children).push_back(id);
    return id;
  }
  const std::vector<NodeId>& children(NodeId n) const {
    return n == kEpsilon ? roots : nodes.at(n).children;
  }
  Word word(NodeId n) const {
    Word w;
    for (; n != kEpsilon; n = nodes.at(n).parent) w.insert(w.begin(), nodes.at(n).label);
    return w;
  }
  std::size_t size() const { return nodes.size(); }
  std::vector<Word> maximal_positions() const {
    std::vector<Word> out;
    for (NodeId n = 0; n < static_cast<NodeId>(nodes.size()); ++n)
      if (nodes[n].children.empty()) out.push_back(word(n));
    return out;
  }
};

inline Polarity polarity_of(MoveKind k) {
  return k == MoveKind::cell ? Polarity::opponent : Polarity::player;
}

/// S^⊥: same forest, cells and values exchanged.
inline Polarized dual(const Sds& s) {
  Polarized d{s.name() + "^⊥", {}, {}};
  for (NodeId n = 0; n < static_cast<NodeId>(s.size()); ++n)
    d.add(s.parent(n), s.label(n),
          s.kind(n) == MoveKind::cell ? Polarity::player : Polarity::opponent);
  return d;
}

inline const std::string kStar = "★";

/// ↓(S^⊥): a fresh opponent move ★ prefixed to every position of the dual.
inline Polarized shift_down(const Sds& s) {
  Polarized d = dual(s);
  Polarized out{"↓(" + d.name + ")", {}, {}};
  NodeId star = out.add(kEpsilon, kStar, Polarity::opponent);
  for (NodeId n = 0; n < static_cast<NodeId>(d.size()); ++n)
    out.add(d.nodes[n].parent == kEpsilon ? star : d.nodes[n].parent + 1, d.nodes[n].label,
            d.nodes[n].polarity);
  return out;
}

inline Polarized shift_down(const Polarized& p) {
  throw Error(ErrorCode::polarity, "shift of the polarized structure " + p.name + " is unsupported");
}

struct LaurentArrow {
  SdsPtr par;                    // (↓S)^⊥ ⅋ T, opponent moves as cells
  SdsPtr arrow;                  // S -o T
  std::vector<NodeId> to_arrow;  // par node -> arrow node
};

/// Builds the par of the shifted source and the target: initial moves pair
/// ★ with an initial cell of the target, then the two components interleave,
/// the player alone switching components. Each position is translated to the
/// matching position of the affine arrow.
inline LaurentArrow laurent_arrow(SdsPtr source, SdsPtr target) {
  const Polarized down = shift_down(*source);
  const Sds& tgt = *target;
  auto par = std::make_shared<Sds>("(↓" + wrap_label(source->name()) + ")^⊥ ⅋ " +
                                   wrap_label(tgt.name()));
  auto arrow = affine_arrow(source, target);

  struct State {
    NodeId down;  // node of the shifted structure
    NodeId tgt;   // node of the target
    int last_player_component;  // 1 = shifted source, 2 = target, 0 = none yet
  };
  std::vector<State> states;
  std::vector<NodeId> to_arrow;
  auto add = [&](NodeId parent, std::string label, MoveKind kind, State st, std::string arrow_move) {
    NodeId n = par->add(parent, std::move(label), kind);
    states.resize(par->size());
    to_arrow.resize(par->size(), kAbsent);
    states[n] = st;
    NodeId ap = parent == kEpsilon ? kEpsilon : to_arrow[parent];
    to_arrow[n] = ap == kAbsent ? kAbsent : arrow->child(ap, arrow_move);
    return n;
  };
  auto down_ends_opponent = [&](NodeId d) { return down.nodes[d].polarity == Polarity::opponent; };

  std::vector<NodeId> stack;
  for (NodeId star : down.roots)
    for (NodeId c : tgt.roots())
      stack.push_back(add(kEpsilon, "(" + down.nodes[star].label + "," + tgt.label(c) + ")",
                          MoveKind::cell, State{star, c, 0},
                          arrow_label(ArrowTag::request, tgt.label(c))));
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    const State st = states[n];
    if (par->kind(n) == MoveKind::cell) {
      // Player: any component whose position awaits a player move.
      if (down_ends_opponent(st.down))
        for (NodeId m : down.children(st.down))
          stack.push_back(add(n, product_label(down.nodes[m].label, 1), MoveKind::value,
                              State{m, st.tgt, 1},
                              arrow_label(ArrowTag::valof, down.nodes[m].label)));
      if (tgt.kind(st.tgt) == MoveKind::cell)
        for (NodeId v : tgt.children(st.tgt))
          stack.push_back(add(n, product_label(tgt.label(v), 2), MoveKind::value,
                              State{st.down, v, 2}, arrow_label(ArrowTag::output, tgt.label(v))));
    } else if (st.last_player_component == 1) {
      for (NodeId m : down.children(st.down))
        stack.push_back(add(n, product_label(down.nodes[m].label, 1), MoveKind::cell,
                            State{m, st.tgt, 1}, arrow_label(ArrowTag::is, down.nodes[m].label)));
    } else {
      for (NodeId c : tgt.children(st.tgt))
        stack.push_back(add(n, product_label(tgt.label(c), 2), MoveKind::cell,
                            State{st.down, c, 2}, arrow_label(ArrowTag::request, tgt.label(c))));
    }
  }
  return LaurentArrow{par, arrow, std::move(to_arrow)};
}

}  // namespace seqalg
