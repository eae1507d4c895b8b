#pragma once

// The definition language.
//
//   sds Bool "booleans" { cell "?" { value "tt" value "ff" } }
//   sds Bool2 = Bool * Bool
//   strategy x : Bool2 { cell "?.1" { value "tt.1" } }
//   counter a : Bool2 { cell "?.2" }
//   algorithm negation : Bool -o Bool {
//     request "?" { valof "?" { is "tt" { output "ff" } is "ff" { output "tt" } } }
//   }
//   table por (2) { (tt, bot) -> tt; (bot, tt) -> tt; (ff, ff) -> ff; }
//
// The optional string after a name is a one-line description. Tables list
// rows; unlisted arguments are completed by monotonicity.

#include <string>
#include <vector>

#include "seqalg/catalog.hpp"
#include "seqalg/lexer.hpp"
#include "seqalg/store.hpp"

namespace seqalg {

namespace detail {

struct LabelTree {
  std::string keyword;
  std::string label;
  int line, column;
  std::vector<LabelTree> children;
};

class DefinitionParser {
 public:
  DefinitionParser(const std::string& text, Store& store) : ts_(tokenize(text)), store_(store) {}

  std::vector<std::string> run() {
    std::vector<std::string> names;
    while (!ts_.at(TokenKind::end)) names.push_back(declaration());
    return names;
  }

 private:
  std::string declaration() {
    const Token start = ts_.peek();
    const std::string what = ts_.expect(TokenKind::ident, "a declaration").text;
    Entry e;
    e.name = ts_.expect(TokenKind::ident, "a name").text;
    if (ts_.at(TokenKind::string)) e.anchor = ts_.next().text;
    located(start, [&] {
      if (what == "sds") sds(e);
      else if (what == "strategy" || what == "counter") behaviour(e, what == "strategy");
      else if (what == "algorithm") algorithm(e);
      else if (what == "table") table(e);
      else throw parse_error(start.line, start.column, "unknown declaration '" + what + "'");
    });
    std::string name = e.name;
    located(start, [&] { store_.add(std::move(e)); });
    return name;
  }

  // Prefixes errors without a location by the declaration's position.
  template <class Body>
  void located(const Token& at, Body body) {
    try {
      body();
    } catch (const Error& err) {
      if (err.code() == ErrorCode::parse) throw;
      std::string msg = err.what();
      const std::string prefix = std::string(to_string(err.code())) + ": ";
      if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
      throw Error(err.code(), "line " + std::to_string(at.line) + ", column " + std::to_string(at.column) +
                                  ": " + msg);
    }
  }

  std::vector<LabelTree> trees(const std::vector<std::string>& keywords) {
    std::vector<LabelTree> out;
    ts_.expect("{");
    while (!ts_.accept("}")) {
      const Token& kw = ts_.expect(TokenKind::ident, "a move keyword");
      if (std::find(keywords.begin(), keywords.end(), kw.text) == keywords.end())
        throw parse_error(kw.line, kw.column, "unexpected keyword '" + kw.text + "'");
      LabelTree t{kw.text, "", kw.line, kw.column, {}};
      t.label = ts_.expect(TokenKind::string, "a quoted label after '" + kw.text + "'").text;
      if (ts_.at(TokenKind::punct, "{")) t.children = trees(keywords);
      out.push_back(std::move(t));
    }
    return out;
  }

  TypeExpr type() { return parse_type(ts_); }

  void sds(Entry& e) {
    e.kind = EntryKind::sds;
    if (ts_.accept("=")) {
      e.type = type();
      e.sds = store_.resolve(*e.type);
      return;
    }
    auto s = std::make_shared<Sds>(e.name);
    auto go = [&](auto& self, NodeId parent, const LabelTree& t) -> void {
      const MoveKind k = t.keyword == "cell" ? MoveKind::cell : MoveKind::value;
      NodeId n;
      try {
        n = s->add(parent, t.label, k);
      } catch (const Error& err) {
        throw parse_error(t.line, t.column, err.what());
      }
      for (const auto& c : t.children) self(self, n, c);
    };
    for (const auto& t : trees({"cell", "value"})) go(go, kEpsilon, t);
    e.sds = s;
  }

  // Walks a label tree in `s`, returning the nodes it names.
  std::vector<NodeId> walk(const Sds& s, const std::vector<LabelTree>& ts, bool arrow) {
    std::vector<NodeId> nodes;
    auto go = [&](auto& self, NodeId parent, const LabelTree& t) -> void {
      std::string label = t.label;
      if (arrow) {
        static const std::map<std::string, ArrowTag> tags{{"request", ArrowTag::request},
                                                           {"valof", ArrowTag::valof},
                                                           {"is", ArrowTag::is},
                                                           {"output", ArrowTag::output}};
        label = arrow_label(tags.at(t.keyword), t.label);
      }
      NodeId n = s.child(parent, label);
      if (n == kAbsent || (!arrow && (s.kind(n) == MoveKind::cell) != (t.keyword == "cell")))
        throw parse_error(t.line, t.column, "'" + t.label + "' is not a legal move of " + s.name() + " here");
      nodes.push_back(n);
      for (const auto& c : t.children) self(self, n, c);
    };
    for (const auto& t : ts) go(go, kEpsilon, t);
    return nodes;
  }

  void behaviour(Entry& e, bool strategy) {
    ts_.expect(":");
    e.type = type();
    e.sds = store_.resolve(*e.type);
    const Sds& s = *e.sds;
    std::vector<NodeId> members;
    for (NodeId n : walk(s, trees({"cell", "value"}), false))
      if ((s.kind(n) == MoveKind::value) == strategy) members.push_back(n);
    if (strategy) {
      e.kind = EntryKind::strategy;
      e.strategy = validate_strategy(s, members).value();
    } else {
      e.kind = EntryKind::counter;
      e.counter = validate_counter_strategy(s, members).value();
    }
  }

  void algorithm(Entry& e) {
    ts_.expect(":");
    e.kind = EntryKind::algorithm;
    e.type = type();
    if (e.type->kind != TypeExpr::Kind::arrow)
      throw Error(ErrorCode::type_mismatch, "an algorithm's type must be an arrow");
    e.sds = store_.resolve(*e.type);
    std::vector<NodeId> rs;
    for (NodeId n : walk(*e.sds, trees({"request", "valof", "is", "output"}), true))
      if (e.sds->kind(n) == MoveKind::value) rs.push_back(n);
    e.strategy = validate_strategy(*e.sds, rs).value();
  }

  FlatValue flat_value() {
    if (ts_.at(TokenKind::string)) return ts_.next().text;
    const std::string v = ts_.expect(TokenKind::ident, "a value or bot").text;
    if (v == "bot") return std::nullopt;
    return v;
  }

  void table(Entry& e) {
    e.kind = EntryKind::table;
    ts_.expect("(");
    e.table.name = e.name;
    e.table.arity = std::stoul(ts_.expect(TokenKind::number, "the arity").text);
    ts_.expect(")");
    ts_.expect("{");
    while (!ts_.accept("}")) {
      const Token row = ts_.peek();
      ts_.expect("(");
      FlatTuple t{flat_value()};
      while (ts_.accept(",")) t.push_back(flat_value());
      ts_.expect(")");
      ts_.expect("->");
      FlatValue r = flat_value();
      ts_.expect(";");
      if (t.size() != e.table.arity)
        throw parse_error(row.line, row.column, "row has " + std::to_string(t.size()) + " arguments");
      if (!e.table.rows.emplace(t, r).second) throw parse_error(row.line, row.column, "duplicate row");
    }
    if (auto bad = monotonicity_violation(e.table))
      throw Error(ErrorCode::violation, "table " + e.name + " is not monotone: " + *bad);
  }

  TokenStream ts_;
  Store& store_;
};

// ---------------------------------------------------------------------------
// Printing.

inline bool plain_ident(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return s != "bot";
}

inline std::string print_flat(const FlatValue& v) {
  if (!v) return "bot";
  return plain_ident(*v) ? *v : quote(*v);
}

// Prints the nodes of `s` that lie on a path to a kept node.
inline void print_tree(std::string& out, const Sds& s, const std::vector<bool>& keep, NodeId at,
                       int depth, bool arrow) {
  for (NodeId c : s.children(at)) {
    if (!keep[static_cast<std::size_t>(c)]) continue;
    out += std::string(static_cast<std::size_t>(depth) * 2, ' ');
    if (arrow) {
      static const char* names[] = {"request", "valof", "is", "output"};
      out += std::string(names[static_cast<int>(tag_of(s, c))]) + " " + quote(inner_label(s, c));
    } else {
      out += std::string(s.kind(c) == MoveKind::cell ? "cell " : "value ") + quote(s.label(c));
    }
    bool any = false;
    for (NodeId g : s.children(c)) any = any || keep[static_cast<std::size_t>(g)];
    if (any) {
      out += " {\n";
      print_tree(out, s, keep, c, depth + 1, arrow);
      out += std::string(static_cast<std::size_t>(depth) * 2, ' ') + "}";
    }
    out += "\n";
  }
}

inline std::vector<bool> prefix_closure(const Sds& s, const std::vector<NodeId>& nodes) {
  std::vector<bool> keep(s.size(), false);
  for (NodeId n : nodes)
    for (NodeId p = n; p != kEpsilon && !keep[static_cast<std::size_t>(p)]; p = s.parent(p))
      keep[static_cast<std::size_t>(p)] = true;
  return keep;
}

}  // namespace detail

/// Parses definitions into `store`, returning the new names in order.
inline std::vector<std::string> load_definitions(const std::string& text, Store& store) {
  return detail::DefinitionParser(text, store).run();
}

inline std::string print_entry(const Entry& e) {
  std::string out = std::string(kind_name(e.kind)) + " " + e.name;
  if (!e.anchor.empty()) out += " " + quote(e.anchor);
  auto block = [&](const Sds& s, const std::vector<NodeId>& nodes, bool arrow) {
    auto keep = detail::prefix_closure(s, nodes);
    std::string body;
    detail::print_tree(body, s, keep, kEpsilon, 1, arrow);
    out += body.empty() ? " {}\n" : " {\n" + body + "}\n";
  };
  switch (e.kind) {
    case EntryKind::sds:
      if (e.type) {
        out += " = " + print_type(*e.type) + "\n";
      } else {
        std::vector<NodeId> all(e.sds->size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<NodeId>(i);
        block(*e.sds, all, false);
      }
      break;
    case EntryKind::strategy:
      out += " : " + print_type(*e.type);
      block(*e.sds, e.strategy.responses, false);
      break;
    case EntryKind::counter:
      out += " : " + print_type(*e.type);
      block(*e.sds, e.counter.queries, false);
      break;
    case EntryKind::algorithm:
      out += " : " + print_type(*e.type);
      block(*e.sds, e.strategy.responses, true);
      break;
    case EntryKind::table:
      out += " (" + std::to_string(e.table.arity) + ") {\n";
      for (const auto& [t, r] : e.table.rows) {
        out += "  (";
        for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + detail::print_flat(t[i]);
        out += ") -> " + detail::print_flat(r) + ";\n";
      }
      out += "}\n";
      break;
  }
  return out;
}

/// The definitions of one store layer, blank-line separated.
inline std::string print_definitions(const Store& store) {
  std::string out;
  for (const auto& e : store.own()) out += (out.empty() ? "" : "\n") + print_entry(e);
  return out;
}

}  // namespace seqalg
