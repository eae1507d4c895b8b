#pragma once

// Tokens of the definition language: identifiers, quoted labels, integers
// and punctuation. '#' starts a comment running to the end of the line.

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "seqalg/error.hpp"

namespace seqalg {

enum class TokenKind { ident, string, number, punct, end };

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int column;
};

inline Error parse_error(int line, int column, const std::string& what) {
  return Error(ErrorCode::parse,
               "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const int l = line, k = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' ||
                                 text[j] == '\''))
        ++j;
      out.push_back({TokenKind::ident, text.substr(i, j - i), l, k});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({TokenKind::number, text.substr(i, j - i), l, k});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::string s;
      advance(1);
      for (;;) {
        if (i >= text.size() || text[i] == '\n') throw parse_error(l, k, "unterminated string");
        if (text[i] == '"') break;
        if (text[i] == '\\' && i + 1 < text.size()) advance(1);
        s += text[i];
        advance(1);
      }
      advance(1);
      out.push_back({TokenKind::string, s, l, k});
      continue;
    }
    if (text.compare(i, 2, "-o") == 0 || text.compare(i, 2, "->") == 0) {
      out.push_back({TokenKind::punct, text.substr(i, 2), l, k});
      advance(2);
      continue;
    }
    if (std::string("{}(),;:=*!").find(c) != std::string::npos) {
      out.push_back({TokenKind::punct, std::string(1, c), l, k});
      advance(1);
      continue;
    }
    throw parse_error(l, k, std::string("unexpected character '") + c + "'");
  }
  out.push_back({TokenKind::end, "", line, col});
  return out;
}

/// Quotes a label for printing, escaping quotes and backslashes.
inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// Cursor over a token stream.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : t_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const { return t_[std::min(pos_ + ahead, t_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < t_.size()) ++pos_;
    return t;
  }
  bool at(TokenKind k, const std::string& text = {}) const {
    return peek().kind == k && (text.empty() || peek().text == text);
  }
  bool accept(const std::string& punct_or_keyword) {
    if ((peek().kind == TokenKind::punct || peek().kind == TokenKind::ident) &&
        peek().text == punct_or_keyword) {
      next();
      return true;
    }
    return false;
  }
  const Token& expect(TokenKind k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what);
    return next();
  }
  void expect(const std::string& text) {
    if (!accept(text)) fail("expected '" + text + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw parse_error(t.line, t.column,
                      what + (t.kind == TokenKind::end ? " at end of input" : ", found '" + t.text + "'"));
  }

 private:
  std::vector<Token> t_;
  std::size_t pos_ = 0;
};

}  // namespace seqalg
