#pragma once

// Type expressions over named sds's: NAME, !T, T * T, T -o T, with_error(T).
// Precedence from loosest: -o (right associative), *, then prefix !.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "seqalg/constructors.hpp"
#include "seqalg/lexer.hpp"

namespace seqalg {

struct TypeExpr {
  enum class Kind { name, bang, product, arrow, with_error };
  Kind kind = Kind::name;
  std::string ident;
  std::vector<TypeExpr> args;

  bool operator==(const TypeExpr&) const = default;
};

inline TypeExpr type_name(std::string n) { return {TypeExpr::Kind::name, std::move(n), {}}; }
inline TypeExpr type_bang(TypeExpr t) { return {TypeExpr::Kind::bang, {}, {std::move(t)}}; }
inline TypeExpr type_product(std::vector<TypeExpr> ts) { return {TypeExpr::Kind::product, {}, std::move(ts)}; }
inline TypeExpr type_arrow(TypeExpr a, TypeExpr b) {
  return {TypeExpr::Kind::arrow, {}, {std::move(a), std::move(b)}};
}
inline TypeExpr type_with_error(TypeExpr t) { return {TypeExpr::Kind::with_error, {}, {std::move(t)}}; }

inline std::string print_type(const TypeExpr& t, int prec = 0) {
  auto paren = [&](int p, std::string s) { return prec > p ? "(" + s + ")" : s; };
  switch (t.kind) {
    case TypeExpr::Kind::name: return t.ident;
    case TypeExpr::Kind::with_error: return "with_error(" + print_type(t.args[0]) + ")";
    case TypeExpr::Kind::bang: return "!" + print_type(t.args[0], 2);
    case TypeExpr::Kind::product: {
      std::string s;
      for (std::size_t i = 0; i < t.args.size(); ++i) s += (i ? " * " : "") + print_type(t.args[i], 2);
      return paren(1, s);
    }
    case TypeExpr::Kind::arrow:
      return paren(0, print_type(t.args[0], 1) + " -o " + print_type(t.args[1], 0));
  }
  return {};
}

inline TypeExpr parse_type(TokenStream& ts);

namespace detail {
inline TypeExpr parse_type_atom(TokenStream& ts) {
  if (ts.accept("!")) return type_bang(parse_type_atom(ts));
  if (ts.accept("(")) {
    TypeExpr t = parse_type(ts);
    ts.expect(")");
    return t;
  }
  if (ts.at(TokenKind::ident, "with_error")) {
    ts.next();
    ts.expect("(");
    TypeExpr t = parse_type(ts);
    ts.expect(")");
    return type_with_error(std::move(t));
  }
  return type_name(ts.expect(TokenKind::ident, "a type").text);
}
}  // namespace detail

inline TypeExpr parse_type(TokenStream& ts) {
  std::vector<TypeExpr> factors{detail::parse_type_atom(ts)};
  while (ts.accept("*")) factors.push_back(detail::parse_type_atom(ts));
  TypeExpr left = factors.size() == 1 ? std::move(factors[0]) : type_product(std::move(factors));
  if (ts.accept("-o")) return type_arrow(std::move(left), parse_type(ts));
  return left;
}

inline TypeExpr parse_type(const std::string& text) {
  TokenStream ts(tokenize(text));
  TypeExpr t = parse_type(ts);
  if (!ts.at(TokenKind::end)) ts.fail("unexpected text after type");
  return t;
}

inline const std::string kErrorLabel = "err";

/// Adds the value "err" under every cell of s; err ends its branch.
inline SdsPtr with_error(const SdsPtr& base) {
  const Sds& b = *base;
  if (b.label_kind(kErrorLabel))
    throw Error(ErrorCode::freshness, "'" + kErrorLabel + "' already occurs in " + b.name());
  auto s = std::make_shared<Sds>("with_error(" + b.name() + ")");
  std::vector<NodeId> image(b.size());
  ErrorOrigin origin{base, kErrorLabel};
  for (NodeId n = 0; n < static_cast<NodeId>(b.size()); ++n) {
    NodeId p = b.parent(n);
    image[n] = s->add(p == kEpsilon ? kEpsilon : image[p], b.label(n), b.kind(n));
    if (b.kind(n) == MoveKind::cell) s->add(image[n], kErrorLabel, MoveKind::value);
  }
  s->set_origin(std::move(origin));
  return s;
}

/// Resolves type expressions against named sds's, sharing one instance per
/// canonical expression.
class TypeResolver {
 public:
  using Lookup = std::function<SdsPtr(const std::string&)>;
  explicit TypeResolver(Lookup lookup) : lookup_(std::move(lookup)) {}

  SdsPtr operator()(const TypeExpr& t) {
    if (t.kind == TypeExpr::Kind::name) return lookup_(t.ident);
    const std::string key = print_type(t);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SdsPtr s;
    switch (t.kind) {
      case TypeExpr::Kind::bang: s = bang((*this)(t.args[0])); break;
      case TypeExpr::Kind::with_error: s = with_error((*this)(t.args[0])); break;
      case TypeExpr::Kind::arrow: s = affine_arrow((*this)(t.args[0]), (*this)(t.args[1])); break;
      case TypeExpr::Kind::product: {
        std::vector<SdsPtr> fs;
        for (const auto& a : t.args) fs.push_back((*this)(a));
        s = product(fs);
        break;
      }
      case TypeExpr::Kind::name: break;
    }
    memo_[key] = s;
    return s;
  }

 private:
  Lookup lookup_;
  std::map<std::string, SdsPtr> memo_;
};

}  // namespace seqalg
