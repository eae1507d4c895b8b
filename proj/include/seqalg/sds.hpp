#pragma once

// Sequential data structures: labelled forests whose branches alternate
// cells (opponent moves) and values (player moves), together with the
// strategies and counter-strategies played on them.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "seqalg/error.hpp"

namespace seqalg {

enum class MoveKind : std::uint8_t { cell, value };

/// Index of a position inside one Sds. Positions are prefix-tree nodes.
using NodeId = std::int32_t;
inline constexpr NodeId kEpsilon = -1;
inline constexpr NodeId kAbsent = -2;

using Word = std::vector<std::string>;

class Sds;
using SdsPtr = std::shared_ptr<const Sds>;

enum class PositionKind { query, response };
enum class Winner { player, opponent };

/// A response set, kept sorted by node id.
struct Strategy {
  std::vector<NodeId> responses;

  bool contains(NodeId n) const {
    return std::binary_search(responses.begin(), responses.end(), n);
  }
  std::size_t size() const { return responses.size(); }
  bool empty() const { return responses.empty(); }
  auto operator<=>(const Strategy&) const = default;
};

/// A query set, kept sorted by node id.
struct CounterStrategy {
  std::vector<NodeId> queries;

  bool contains(NodeId n) const {
    return std::binary_search(queries.begin(), queries.end(), n);
  }
  std::size_t size() const { return queries.size(); }
  auto operator<=>(const CounterStrategy&) const = default;
};

template <class Set>
bool is_subset(const Set& a, const Set& b) {
  if constexpr (std::is_same_v<Set, Strategy>) {
    return std::includes(b.responses.begin(), b.responses.end(), a.responses.begin(),
                         a.responses.end());
  } else {
    return std::includes(b.queries.begin(), b.queries.end(), a.queries.begin(),
                         a.queries.end());
  }
}

inline Strategy strategy_union(const Strategy& a, const Strategy& b) {
  Strategy out;
  std::set_union(a.responses.begin(), a.responses.end(), b.responses.begin(),
                 b.responses.end(), std::back_inserter(out.responses));
  return out;
}

inline CounterStrategy counter_union(const CounterStrategy& a, const CounterStrategy& b) {
  CounterStrategy out;
  std::set_union(a.queries.begin(), a.queries.end(), b.queries.begin(), b.queries.end(),
                 std::back_inserter(out.queries));
  return out;
}

// ---------------------------------------------------------------------------
// Move labels of constructed structures.
//
// Compound labels embed component labels; a component label with a space
// outside brackets is parenthesised so compound labels read unambiguously.

inline bool has_top_level_space(std::string_view label) {
  int depth = 0;
  for (char ch : label) {
    if (ch == '(' || ch == '<') ++depth;
    if (ch == ')' || ch == '>') --depth;
    if (ch == ' ' && depth == 0) return true;
  }
  return false;
}

inline std::string wrap_label(std::string_view label) {
  if (!has_top_level_space(label)) return std::string(label);
  return "(" + std::string(label) + ")";
}

enum class ArrowTag : std::uint8_t { request, valof, is, output };

inline std::string_view tag_name(ArrowTag tag) {
  switch (tag) {
    case ArrowTag::request: return "req";
    case ArrowTag::valof: return "valof";
    case ArrowTag::is: return "is";
    case ArrowTag::output: return "out";
  }
  return "?";
}

inline std::optional<ArrowTag> parse_tag(std::string_view s) {
  if (s == "req" || s == "request") return ArrowTag::request;
  if (s == "valof") return ArrowTag::valof;
  if (s == "is") return ArrowTag::is;
  if (s == "out" || s == "output") return ArrowTag::output;
  return std::nullopt;
}

inline std::string arrow_label(ArrowTag tag, std::string_view inner) {
  return std::string(tag_name(tag)) + " " + wrap_label(inner);
}

inline std::string word_label(const Word& w) {
  std::string out = "<";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += wrap_label(w[i]);
  }
  return out + ">";
}

inline std::string product_label(std::string_view inner, std::size_t index) {
  return wrap_label(inner) + "." + std::to_string(index);
}

inline std::string join_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Provenance of constructed structures.

struct ProductOrigin {
  std::vector<SdsPtr> factors;
  // per node: (factor index, node in that factor)
  std::vector<std::pair<std::size_t, NodeId>> component;
};

struct ArrowOrigin {
  SdsPtr source;
  SdsPtr target;
  std::vector<ArrowTag> tag;
  std::vector<NodeId> inner;        // the component move's node
  std::vector<NodeId> source_proj;  // kEpsilon when the source is untouched
  std::vector<NodeId> target_proj;
};

struct BangOrigin {
  SdsPtr base;
  std::vector<NodeId> base_node;  // query (cells) or response (values) of base
  // strategy(rho) for value nodes; for a cell node rho.q, strategy(rho)
  std::vector<Strategy> accumulated;
};

struct ErrorOrigin {
  SdsPtr base;
  std::string error_label;
};

using Origin = std::variant<std::monostate, ProductOrigin, ArrowOrigin, BangOrigin, ErrorOrigin>;

// ---------------------------------------------------------------------------

class Sds {
 public:
  struct Node {
    std::string label;
    MoveKind kind;
    NodeId parent;
    std::uint32_t depth;
    std::vector<NodeId> children;
  };

  explicit Sds(std::string name = {}) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Appends a child under `parent` (kEpsilon for a root). Throws when the
  /// alternation, cell-start or cell/value disjointness rules would break.
  NodeId add(NodeId parent, std::string label, MoveKind kind) {
    if (parent == kEpsilon) {
      if (kind != MoveKind::cell)
        throw Error(ErrorCode::violation, "positions start with a cell: '" + label + "'");
    } else if (nodes_.at(parent).kind == kind) {
      throw Error(ErrorCode::violation, "positions alternate: '" + label + "'");
    }
    auto [it, fresh] = kinds_.emplace(label, kind);
    if (!fresh && it->second != kind)
      throw Error(ErrorCode::violation, "label '" + label + "' used as cell and value");
    auto key = std::make_pair(parent, label);
    if (auto found = index_.find(key); found != index_.end()) return found->second;
    const auto id = static_cast<NodeId>(nodes_.size());
    const std::uint32_t depth = parent == kEpsilon ? 1 : nodes_[parent].depth + 1;
    nodes_.push_back(Node{label, kind, parent, depth, {}});
    (parent == kEpsilon ? roots_ : nodes_[parent].children).push_back(id);
    index_.emplace(std::move(key), id);
    return id;
  }

  std::size_t size() const { return nodes_.size(); }
  const Node& node(NodeId n) const { return nodes_.at(static_cast<std::size_t>(n)); }
  const std::string& label(NodeId n) const { return node(n).label; }
  MoveKind kind(NodeId n) const { return node(n).kind; }
  NodeId parent(NodeId n) const { return n == kEpsilon ? kEpsilon : node(n).parent; }
  std::size_t depth(NodeId n) const { return n == kEpsilon ? 0 : node(n).depth; }

  const std::vector<NodeId>& children(NodeId n) const {
    return n == kEpsilon ? roots_ : node(n).children;
  }
  const std::vector<NodeId>& roots() const { return roots_; }

  NodeId child(NodeId parent, std::string_view label) const {
    auto it = index_.find(std::make_pair(parent, std::string(label)));
    return it == index_.end() ? kAbsent : it->second;
  }

  /// The node spelled by `w`, kEpsilon for the empty word, kAbsent otherwise.
  NodeId find(const Word& w) const {
    NodeId cur = kEpsilon;
    for (const auto& m : w) {
      cur = child(cur, m);
      if (cur == kAbsent) return kAbsent;
    }
    return cur;
  }

  NodeId at(const Word& w) const {
    NodeId n = find(w);
    if (n == kAbsent)
      throw Error(ErrorCode::not_a_position, "'" + join_word(w) + "' in " + name_);
    return n;
  }

  Word word(NodeId n) const {
    Word w(depth(n));
    for (std::size_t i = w.size(); n != kEpsilon; n = parent(n)) w[--i] = label(n);
    return w;
  }

  std::string show(NodeId n) const { return n == kEpsilon ? "" : join_word(word(n)); }

  bool is_response(NodeId n) const { return n != kEpsilon && kind(n) == MoveKind::value; }
  bool is_query(NodeId n) const { return n != kEpsilon && kind(n) == MoveKind::cell; }

  /// a is a (non-strict) prefix of b; epsilon is a prefix of everything.
  bool is_prefix(NodeId a, NodeId b) const {
    if (a == kEpsilon) return true;
    while (b != kEpsilon && depth(b) > depth(a)) b = parent(b);
    return a == b;
  }

  NodeId ancestor_at(NodeId n, std::size_t d) const {
    while (depth(n) > d) n = parent(n);
    return n;
  }

  std::optional<MoveKind> label_kind(const std::string& label) const {
    auto it = kinds_.find(label);
    if (it == kinds_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<std::string, MoveKind>& labels() const { return kinds_; }

  std::vector<NodeId> responses() const { return collect(MoveKind::value); }
  std::vector<NodeId> queries() const { return collect(MoveKind::cell); }

  const Origin& origin() const { return origin_; }
  void set_origin(Origin o) { origin_ = std::move(o); }

  template <class T>
  const T* origin_as() const {
    return std::get_if<T>(&origin_);
  }

  /// Equal position sets (names and provenance ignored).
  bool same_positions(const Sds& other) const {
    if (size() != other.size()) return false;
    for (NodeId n = 0; n < static_cast<NodeId>(size()); ++n) {
      NodeId p = parent(n);
      NodeId mapped_parent = p == kEpsilon ? kEpsilon : other.find(word(p));
      if (mapped_parent == kAbsent) return false;
      NodeId m = other.child(mapped_parent, label(n));
      if (m == kAbsent || other.kind(m) != kind(n)) return false;
    }
    return true;
  }

 private:
  std::vector<NodeId> collect(MoveKind k) const {
    std::vector<NodeId> out;
    for (NodeId n = 0; n < static_cast<NodeId>(nodes_.size()); ++n)
      if (nodes_[n].kind == k) out.push_back(n);
    return out;
  }

  std::string name_;
  std::vector<Node> nodes_;
  std::vector<NodeId> roots_;
  std::map<std::pair<NodeId, std::string>, NodeId> index_;
  std::map<std::string, MoveKind> kinds_;
  Origin origin_;
};

// ---------------------------------------------------------------------------
// Building and checking sds's from raw words.

/// Builds an sds from a raw set of words over declared cells and values.
/// Reports the first word (in the given order) breaking a rule.
inline Checked<Sds> validate_sds(std::string name, const std::set<std::string>& cells,
                                 const std::set<std::string>& values,
                                 const std::vector<Word>& words) {
  for (const auto& c : cells)
    if (values.count(c)) return Violation{"disjointness", c, "label is both cell and value"};
  std::set<Word> all(words.begin(), words.end());
  for (const auto& w : words) {
    const auto subject = join_word(w);
    if (w.empty()) return Violation{"non-empty", subject, "positions are non-empty words"};
    for (std::size_t i = 0; i < w.size(); ++i) {
      const bool cell = cells.count(w[i]) != 0;
      const bool value = values.count(w[i]) != 0;
      if (!cell && !value) return Violation{"declared moves", subject, "unknown move " + w[i]};
      if (i == 0 && !cell) return Violation{"cell-start", subject, "starts with a value"};
      if (i > 0 && cell == (cells.count(w[i - 1]) != 0))
        return Violation{"alternation", subject, "moves " + w[i - 1] + " " + w[i]};
    }
    for (std::size_t len = 1; len < w.size(); ++len) {
      Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
      if (!all.count(prefix))
        return Violation{"prefix closure", subject, "missing prefix " + join_word(prefix)};
    }
  }
  Sds s(std::move(name));
  // Siblings keep first-occurrence order.
  for (const auto& w : words) {
    NodeId cur = kEpsilon;
    for (const auto& m : w) cur = s.add(cur, m, cells.count(m) ? MoveKind::cell : MoveKind::value);
  }
  return s;
}

/// Convenience builder for base sds's given as nested cell/value trees.
struct Tree {
  std::string label;
  std::vector<Tree> children;
};

inline SdsPtr make_sds(std::string name, const std::vector<Tree>& cells) {
  auto s = std::make_shared<Sds>(std::move(name));
  auto go = [&](auto& self, NodeId parent, const Tree& t, MoveKind k) -> void {
    NodeId n = s->add(parent, t.label, k);
    for (const auto& c : t.children)
      self(self, n, c, k == MoveKind::cell ? MoveKind::value : MoveKind::cell);
  };
  for (const auto& c : cells) go(go, kEpsilon, c, MoveKind::cell);
  return s;
}

// ---------------------------------------------------------------------------
// Positions.

inline PositionKind classify(const Sds& s, NodeId p) {
  if (p == kEpsilon || p < 0 || static_cast<std::size_t>(p) >= s.size())
    throw Error(ErrorCode::not_a_position, "node " + std::to_string(p));
  return s.kind(p) == MoveKind::cell ? PositionKind::query : PositionKind::response;
}

inline PositionKind classify(const Sds& s, const Word& w) {
  NodeId p = s.find(w);
  if (p == kAbsent || p == kEpsilon)
    throw Error(ErrorCode::not_a_position, "'" + join_word(w) + "' in " + s.name());
  return classify(s, p);
}

/// Longest common prefix.
inline NodeId glb(const Sds& s, NodeId a, NodeId b) {
  if (a == kEpsilon || b == kEpsilon) return kEpsilon;
  while (s.depth(a) > s.depth(b)) a = s.parent(a);
  while (s.depth(b) > s.depth(a)) b = s.parent(b);
  while (a != b) {
    a = s.parent(a);
    b = s.parent(b);
  }
  return a;
}

/// The strategy generated by a response (its response prefixes); empty for epsilon.
inline Strategy response_prefixes(const Sds& s, NodeId p) {
  Strategy x;
  for (; p != kEpsilon; p = s.parent(p))
    if (s.kind(p) == MoveKind::value) x.responses.push_back(p);
  std::sort(x.responses.begin(), x.responses.end());
  return x;
}

inline CounterStrategy query_prefixes(const Sds& s, NodeId p) {
  CounterStrategy a;
  for (; p != kEpsilon; p = s.parent(p))
    if (s.kind(p) == MoveKind::cell) a.queries.push_back(p);
  std::sort(a.queries.begin(), a.queries.end());
  return a;
}

// ---------------------------------------------------------------------------
// Strategies and counter-strategies.

enum class BehaviourKind { strategy, counter_strategy };

namespace detail {

inline Checked<std::vector<NodeId>> check_behaviour(const Sds& s, BehaviourKind kind,
                                                    std::vector<NodeId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const MoveKind ending = kind == BehaviourKind::strategy ? MoveKind::value : MoveKind::cell;
  const char* noun = kind == BehaviourKind::strategy ? "response" : "query";
  auto member = [&](NodeId n) { return std::binary_search(members.begin(), members.end(), n); };
  if (kind == BehaviourKind::counter_strategy && members.empty())
    return Violation{"non-empty", "{}", "a counter-strategy has at least one query"};
  for (NodeId p : members) {
    if (p < 0 || static_cast<std::size_t>(p) >= s.size())
      return Violation{"position", std::to_string(p), "not a position"};
    if (s.kind(p) != ending) return Violation{std::string(noun) + " set", s.show(p), ""};
    for (NodeId a = s.parent(p); a != kEpsilon; a = s.parent(a))
      if (s.kind(a) == ending && !member(a))
        return Violation{std::string(noun) + " prefix closure", s.show(p),
                         "missing " + s.show(a)};
  }
  // glb closure: it suffices to look at siblings below a common node.
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      NodeId g = glb(s, members[i], members[j]);
      if (g == kEpsilon) {
        if (kind == BehaviourKind::counter_strategy)
          return Violation{"glb closure", s.show(members[i]) + " / " + s.show(members[j]),
                           "disjoint roots"};
        continue;
      }
      if (!member(g))
        return Violation{"glb closure", s.show(members[i]) + " / " + s.show(members[j]),
                         "glb " + s.show(g) + " not a member"};
    }
  return members;
}

}  // namespace detail

inline Checked<Strategy> validate_strategy(const Sds& s, std::vector<NodeId> responses) {
  auto r = detail::check_behaviour(s, BehaviourKind::strategy, std::move(responses));
  if (!r) return r.violation();
  return Strategy{r.value()};
}

inline Checked<CounterStrategy> validate_counter_strategy(const Sds& s,
                                                         std::vector<NodeId> queries) {
  auto r = detail::check_behaviour(s, BehaviourKind::counter_strategy, std::move(queries));
  if (!r) return r.violation();
  return CounterStrategy{r.value()};
}

inline std::vector<NodeId> nodes_of(const Sds& s, const std::vector<Word>& words) {
  std::vector<NodeId> out;
  for (const auto& w : words) {
    NodeId n = s.find(w);
    if (n == kAbsent || n == kEpsilon)
      throw Error(ErrorCode::not_a_position, "'" + join_word(w) + "' in " + s.name());
    out.push_back(n);
  }
  return out;
}

inline Strategy strategy_of_words(const Sds& s, const std::vector<Word>& words) {
  return validate_strategy(s, nodes_of(s, words)).value();
}

inline CounterStrategy counter_of_words(const Sds& s, const std::vector<Word>& words) {
  return validate_counter_strategy(s, nodes_of(s, words)).value();
}

template <class Set>
std::vector<std::string> show_set(const Sds& s, const Set& set) {
  std::vector<std::string> out;
  if constexpr (std::is_same_v<Set, Strategy>) {
    for (NodeId n : set.responses) out.push_back(s.show(n));
  } else {
    for (NodeId n : set.queries) out.push_back(s.show(n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// "{p1, p2}" with positions sorted.
template <class Set>
std::string format_set(const Sds& s, const Set& set) {
  std::string out = "{";
  for (const auto& p : show_set(s, set)) out += (out.size() > 1 ? ", " : "") + p;
  return out + "}";
}

/// Queries rc with r in x or r = epsilon, whose cell is still unanswered in x.
inline std::vector<NodeId> accessible(const Sds& s, const Strategy& x) {
  std::vector<NodeId> out;
  auto scan = [&](NodeId r) {
    for (NodeId q : s.children(r)) {
      bool answered = false;
      for (NodeId v : s.children(q)) answered = answered || x.contains(v);
      if (!answered) out.push_back(q);
    }
  };
  scan(kEpsilon);
  for (NodeId r : x.responses) scan(r);
  std::sort(out.begin(), out.end());
  return out;
}

/// Responses qv with q in the counter-strategy and no cell explored below qv.
inline std::vector<NodeId> accessible(const Sds& s, const CounterStrategy& a) {
  std::vector<NodeId> out;
  for (NodeId q : a.queries)
    for (NodeId r : s.children(q)) {
      bool explored = false;
      for (NodeId c : s.children(r)) explored = explored || a.contains(c);
      if (!explored) out.push_back(r);
    }
  std::sort(out.begin(), out.end());
  return out;
}

struct PlayResult {
  NodeId maximal = kEpsilon;
  Winner winner = Winner::opponent;
  bool operator==(const PlayResult&) const = default;
};

/// The maximal position whose response prefixes lie in x and whose query
/// prefixes lie in a.
inline PlayResult play(const Sds& s, const Strategy& x, const CounterStrategy& a) {
  NodeId cur = kEpsilon;
  for (;;) {
    NodeId next = kAbsent;
    for (NodeId c : s.children(cur))
      if (a.contains(c)) next = c;
    if (next == kAbsent) return {cur, Winner::player};
    cur = next;
    next = kAbsent;
    for (NodeId v : s.children(cur))
      if (x.contains(v)) next = v;
    if (next == kAbsent) return {cur, Winner::opponent};
    cur = next;
  }
}

inline bool wins(const Sds& s, const Strategy& x, const CounterStrategy& a) {
  return play(s, x, a).winner == Winner::player;
}

// ---------------------------------------------------------------------------
// Finite enumeration.

inline constexpr std::size_t kDefaultBudget = 1'000'000;

namespace detail {

using Sets = std::vector<std::vector<NodeId>>;

inline Sets product_of(const std::vector<Sets>& factors, std::size_t budget) {
  Sets acc{{}};
  for (const auto& f : factors) {
    if (acc.size() * f.size() > budget)
      throw Error(ErrorCode::size_limit, "enumeration exceeds budget " + std::to_string(budget));
    Sets next;
    next.reserve(acc.size() * f.size());
    for (const auto& a : acc)
      for (const auto& b : f) {
        auto merged = a;
        merged.insert(merged.end(), b.begin(), b.end());
        next.push_back(std::move(merged));
      }
    acc = std::move(next);
  }
  return acc;
}

// Strategies of the sub-forest made of the given cells.
inline Sets strategies_below(const Sds& s, const std::vector<NodeId>& cells, std::size_t budget) {
  std::vector<Sets> factors;
  for (NodeId c : cells) {
    Sets options{{}};
    for (NodeId v : s.children(c)) {
      for (auto& sub : strategies_below(s, s.children(v), budget)) {
        sub.push_back(v);
        options.push_back(std::move(sub));
        if (options.size() > budget)
          throw Error(ErrorCode::size_limit, "enumeration exceeds budget");
      }
    }
    factors.push_back(std::move(options));
  }
  return product_of(factors, budget);
}

// Counter-strategies rooted at query q.
inline Sets counters_at(const Sds& s, NodeId q, std::size_t budget) {
  std::vector<Sets> factors;
  for (NodeId v : s.children(q)) {
    Sets options{{}};
    for (NodeId c : s.children(v))
      for (auto& sub : counters_at(s, c, budget)) {
        options.push_back(std::move(sub));
        if (options.size() > budget)
          throw Error(ErrorCode::size_limit, "enumeration exceeds budget");
      }
    factors.push_back(std::move(options));
  }
  auto out = product_of(factors, budget);
  for (auto& o : out) o.push_back(q);
  return out;
}

}  // namespace detail

/// All finite strategies, in lexicographic order of their sorted node sets.
inline std::vector<Strategy> enumerate_strategies(const Sds& s,
                                                  std::size_t budget = kDefaultBudget) {
  if (s.size() > budget) throw Error(ErrorCode::size_limit, "sds larger than budget");
  std::vector<Strategy> out;
  for (auto& set : detail::strategies_below(s, s.roots(), budget)) {
    std::sort(set.begin(), set.end());
    out.push_back(Strategy{std::move(set)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<CounterStrategy> enumerate_counter_strategies(
    const Sds& s, std::size_t budget = kDefaultBudget) {
  if (s.size() > budget) throw Error(ErrorCode::size_limit, "sds larger than budget");
  std::vector<CounterStrategy> out;
  for (NodeId root : s.roots())
    for (auto& set : detail::counters_at(s, root, budget)) {
      std::sort(set.begin(), set.end());
      out.push_back(CounterStrategy{std::move(set)});
      if (out.size() > budget) throw Error(ErrorCode::size_limit, "enumeration exceeds budget");
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace seqalg
