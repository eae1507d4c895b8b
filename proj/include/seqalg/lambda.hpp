#pragma once

// Untyped λ-terms with named variables, capture-avoiding substitution and
// head reduction.

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seqalg/error.hpp"

namespace seqalg {

struct TermNode;

class Term {
 public:
  enum class Kind { var, app, lam };

  static Term var(std::string name);
  static Term app(Term f, Term a);
  static Term lam(std::string x, Term body);

  Kind kind() const;
  /// Variable name, or the binder of an abstraction.
  const std::string& name() const;
  const Term& fun() const;
  const Term& arg() const;
  const Term& body() const;

  bool operator==(const Term& o) const;

 private:
  Term() = default;
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  friend struct TermNode;
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  Term::Kind kind;
  std::string name;
  Term a, b;  // function and argument, or body and nothing

  static Term make(Term::Kind k, std::string name, Term a = {}, Term b = {}) {
    return Term(std::make_shared<const TermNode>(TermNode{k, std::move(name), std::move(a), std::move(b)}));
  }
};

inline Term Term::var(std::string name) { return TermNode::make(Kind::var, std::move(name)); }
inline Term Term::app(Term f, Term a) { return TermNode::make(Kind::app, {}, std::move(f), std::move(a)); }
inline Term Term::lam(std::string x, Term body) { return TermNode::make(Kind::lam, std::move(x), std::move(body)); }
inline Term::Kind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline const Term& Term::fun() const { return node_->a; }
inline const Term& Term::arg() const { return node_->b; }
inline const Term& Term::body() const { return node_->a; }
inline bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind() || name() != o.name()) return false;
  if (kind() == Kind::var) return true;
  return node_->a == o.node_->a && (kind() == Kind::lam || node_->b == o.node_->b);
}

inline std::set<std::string> free_vars(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::var: return {t.name()};
    case Term::Kind::app: {
      auto s = free_vars(t.fun());
      auto r = free_vars(t.arg());
      s.insert(r.begin(), r.end());
      return s;
    }
    case Term::Kind::lam: {
      auto s = free_vars(t.body());
      s.erase(t.name());
      return s;
    }
  }
  return {};
}

/// x with a numeric suffix, avoiding `taken`. Trailing digits of x are kept.
inline std::string fresh_name(const std::string& x, const std::set<std::string>& taken) {
  for (int i = 1;; ++i) {
    std::string c = x + "_" + std::to_string(i);
    if (!taken.count(c)) return c;
  }
}

/// t[x := n], renaming binders that would capture free variables of n.
inline Term substitute(const Term& t, const std::string& x, const Term& n, const std::set<std::string>& fv_n) {
  switch (t.kind()) {
    case Term::Kind::var: return t.name() == x ? n : t;
    case Term::Kind::app:
      return Term::app(substitute(t.fun(), x, n, fv_n), substitute(t.arg(), x, n, fv_n));
    case Term::Kind::lam: {
      if (t.name() == x) return t;
      const auto fv_body = free_vars(t.body());
      if (!fv_body.count(x)) return t;
      if (!fv_n.count(t.name())) return Term::lam(t.name(), substitute(t.body(), x, n, fv_n));
      std::set<std::string> taken = fv_n;
      taken.insert(fv_body.begin(), fv_body.end());
      taken.insert(x);
      const std::string y = fresh_name(t.name(), taken);
      const Term renamed = substitute(t.body(), t.name(), Term::var(y), {y});
      return Term::lam(y, substitute(renamed, x, n, fv_n));
    }
  }
  return t;
}

inline Term substitute(const Term& t, const std::string& x, const Term& n) {
  return substitute(t, x, n, free_vars(n));
}

// ---------------------------------------------------------------------------
// Printing and parsing. Abstraction bunches print as "λx y. body".

inline std::string print_term(const Term& t);

namespace detail {
inline std::string print_atom(const Term& t) {
  return t.kind() == Term::Kind::var ? t.name() : "(" + print_term(t) + ")";
}
}  // namespace detail

inline std::string print_term(const Term& t) {
  if (t.kind() == Term::Kind::lam) {
    std::string s = "λ" + t.name();
    const Term* b = &t.body();
    while (b->kind() == Term::Kind::lam) {
      s += " " + b->name();
      b = &b->body();
    }
    return s + ". " + print_term(*b);
  }
  if (t.kind() == Term::Kind::var) return t.name();
  std::vector<const Term*> spine;
  const Term* h = &t;
  while (h->kind() == Term::Kind::app) {
    spine.push_back(&h->arg());
    h = &h->fun();
  }
  std::string s = detail::print_atom(*h);
  for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
    const bool last = it + 1 == spine.rend();
    s += " " + ((*it)->kind() == Term::Kind::lam && last ? print_term(**it) : detail::print_atom(**it));
  }
  return s;
}

namespace detail {

class TermParser {
 public:
  explicit TermParser(std::string text) : s_(std::move(text)) {}

  Term parse() {
    Term t = term();
    skip();
    if (i_ != s_.size()) fail("unexpected text");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::parse, "column " + std::to_string(column()) + ": " + what);
  }
  int column() const {
    int c = 1;
    for (std::size_t k = 0; k < i_ && k < s_.size(); ++k)
      if ((static_cast<unsigned char>(s_[k]) & 0xC0) != 0x80) ++c;
    return c;
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool lambda() {
    skip();
    if (s_.compare(i_, 2, "λ") == 0) {
      i_ += 2;
      return true;
    }
    if (i_ < s_.size() && s_[i_] == '\\') {
      ++i_;
      return true;
    }
    return false;
  }
  bool ident_start() const {
    return i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_');
  }
  std::string ident() {
    skip();
    if (!ident_start()) fail("expected a variable");
    std::size_t j = i_;
    while (j < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_' || s_[j] == '\''))
      ++j;
    std::string id = s_.substr(i_, j - i_);
    i_ = j;
    return id;
  }
  Term abstraction() {
    std::vector<std::string> xs;
    for (;;) {
      skip();
      if (!ident_start()) break;
      xs.push_back(ident());
    }
    if (xs.empty()) fail("abstraction without a binder");
    skip();
    if (i_ >= s_.size() || s_[i_] != '.') fail("expected '.'");
    ++i_;
    Term body = term();
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = Term::lam(*it, body);
    return body;
  }
  Term term() {
    if (lambda()) return abstraction();
    std::optional<Term> t;
    for (;;) {
      skip();
      std::optional<Term> a;
      if (lambda()) {
        a = abstraction();
      } else if (i_ < s_.size() && s_[i_] == '(') {
        ++i_;
        a = term();
        skip();
        if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
        ++i_;
      } else if (ident_start()) {
        a = Term::var(ident());
      } else {
        break;
      }
      t = t ? Term::app(*t, *a) : *a;
    }
    if (!t) fail("expected a term");
    return *t;
  }

  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Accepts "λ" or "\" for abstraction and "λx y. M" for bunches.
inline Term parse_term(const std::string& text) { return detail::TermParser(text).parse(); }

// ---------------------------------------------------------------------------
// Head forms.

/// λx₁…xₙ. H M₁…Mₚ with H a variable (head normal form) or an abstraction
/// (head redex form).
struct HeadForm {
  std::vector<std::string> binders;
  Term head;
  std::vector<Term> args;
  bool is_hnf() const { return head.kind() == Term::Kind::var; }
};

inline HeadForm head_form(const Term& t) {
  std::vector<std::string> binders;
  const Term* b = &t;
  while (b->kind() == Term::Kind::lam) {
    binders.push_back(b->name());
    b = &b->body();
  }
  std::vector<Term> args;
  const Term* h = b;
  while (h->kind() == Term::Kind::app) {
    args.push_back(h->arg());
    h = &h->fun();
  }
  std::reverse(args.begin(), args.end());
  return HeadForm{std::move(binders), *h, std::move(args)};
}

inline Term rebuild(const std::vector<std::string>& binders, Term head, const std::vector<Term>& args) {
  for (const auto& a : args) head = Term::app(head, a);
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) head = Term::lam(*it, head);
  return head;
}

inline constexpr std::size_t kDefaultFuel = 10'000;

struct HeadNormalForm {
  std::vector<std::string> binders;
  std::string head;
  std::vector<Term> args;
  std::size_t steps = 0;
  std::vector<std::string> trace;  // printed terms, when requested
};

/// Contracts head redexes only, at most `fuel` times.
inline HeadNormalForm head_normalize(const Term& t, std::size_t fuel = kDefaultFuel, bool keep_trace = false) {
  if (fuel == 0) throw Error(ErrorCode::fuel_exhausted, "no fuel");
  Term cur = t;
  HeadNormalForm out;
  if (keep_trace) out.trace.push_back(print_term(cur));
  for (;;) {
    HeadForm f = head_form(cur);
    if (f.is_hnf()) {
      out.binders = std::move(f.binders);
      out.head = f.head.name();
      out.args = std::move(f.args);
      return out;
    }
    if (out.steps == fuel)
      throw Error(ErrorCode::fuel_exhausted, "no head normal form within " + std::to_string(fuel) + " steps");
    ++out.steps;
    Term contracted = substitute(f.head.body(), f.head.name(), f.args.front());
    f.args.erase(f.args.begin());
    cur = rebuild(f.binders, contracted, f.args);
    if (keep_trace) out.trace.push_back(print_term(cur));
  }
}

}  // namespace seqalg
