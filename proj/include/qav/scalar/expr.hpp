#pragma once

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qav/scalar/scalar.hpp"

namespace qav {

/// Parse failure with a source position and the set of tokens that
/// would have been accepted.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t line, std::size_t column, std::string message,
             std::set<std::string> expected = {})
      : Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message +
                        expected_suffix(expected)),
        line_(line),
        column_(column),
        message_(std::move(message)),
        expected_(std::move(expected)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  static std::string expected_suffix(const std::set<std::string>& e) {
    if (e.empty()) return "";
    std::string s = " (expected one of:";
    for (const auto& t : e) s += " " + t;
    return s + ")";
  }

  std::size_t line_, column_;
  std::string message_;
  std::set<std::string> expected_;
};

struct Token {
  enum class Kind { Number, Ident, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1, column = 1;

  bool is(std::string_view punct) const { return kind == Kind::Punct && text == punct; }
  std::string describe() const {
    if (kind == Kind::End) return "end of input";
    return "'" + text + "'";
  }
};

/// Tokenizer for the expression grammar and the surrounding document
/// language. `#` starts a comment running to end of line.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, pos = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (pos < src.size()) {
    const unsigned char c = static_cast<unsigned char>(src[pos]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (pos < src.size() && src[pos] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t len = 1;
    if (std::isdigit(c)) {
      while (pos + len < src.size() && std::isdigit(static_cast<unsigned char>(src[pos + len]))) ++len;
      t.kind = Token::Kind::Number;
    } else if (std::isalpha(c) || c == '_') {
      while (pos + len < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos + len])) || src[pos + len] == '_'))
        ++len;
      t.kind = Token::Kind::Ident;
    } else if (std::string_view("+-*/^()[],=").find(static_cast<char>(c)) != std::string_view::npos) {
      t.kind = Token::Kind::Punct;
    } else {
      throw ParseError(ErrorKind::SyntaxError, line, col, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
    t.text = std::string(src.substr(pos, len));
    advance(len);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

/// Cursor over a token vector shared by the expression and document parsers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t k = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[k];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  [[noreturn]] void error(const std::string& message, std::set<std::string> expected = {}) const {
    const Token& t = peek();
    throw ParseError(ErrorKind::SyntaxError, t.line, t.column, message + ", found " + t.describe(), std::move(expected));
  }

  void expect_punct(std::string_view p) {
    if (!peek().is(p)) error("unexpected token", {"'" + std::string(p) + "'"});
    next();
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Recursive-descent parser for
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := ('-' | '+') unary | power
///   power := atom ('^' INT)?
///   atom  := INT | symbol | 'i' | '(' expr ')'
/// A literal `p/q` is the quotient of two integers.
class ExpressionParser {
 public:
  ExpressionParser(TokenStream& ts, const SymbolTable& table) : ts_(ts), table_(table) {}

  Scalar parse_expr() {
    Scalar acc = parse_term();
    while (ts_.peek().is("+") || ts_.peek().is("-")) {
      const bool minus = ts_.next().text == "-";
      Scalar rhs = parse_term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

 private:
  Scalar parse_term() {
    Scalar acc = parse_unary();
    while (ts_.peek().is("*") || ts_.peek().is("/")) {
      const Token op = ts_.next();
      Scalar rhs = parse_unary();
      if (op.text == "*") {
        acc *= rhs;
      } else {
        if (rhs.is_zero()) throw ParseError(ErrorKind::SyntaxError, op.line, op.column, "division by zero");
        acc /= rhs;
      }
    }
    return acc;
  }

  Scalar parse_unary() {
    if (ts_.peek().is("-")) {
      ts_.next();
      return -parse_unary();
    }
    if (ts_.peek().is("+")) {
      ts_.next();
      return parse_unary();
    }
    return parse_power();
  }

  Scalar parse_power() {
    Scalar base = parse_atom();
    if (ts_.peek().is("^")) {
      ts_.next();
      if (ts_.peek().kind != Token::Kind::Number) ts_.error("exponent must be a nonnegative integer", {"integer"});
      const Token& e = ts_.next();
      if (e.text.size() > 4) throw ParseError(ErrorKind::SyntaxError, e.line, e.column, "exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(e.text)));
    }
    return base;
  }

  Scalar parse_atom() {
    const Token& t = ts_.peek();
    switch (t.kind) {
      case Token::Kind::Number: {
        ts_.next();
        return Scalar(Rational(Integer(t.text)));
      }
      case Token::Kind::Ident: {
        if (t.text == "i") {
          ts_.next();
          return Scalar::imaginary_unit();
        }
        const int idx = table_.find(t.text);
        if (idx < 0) throw ParseError(ErrorKind::UnknownSymbol, t.line, t.column, "unknown symbol '" + t.text + "'");
        ts_.next();
        return Scalar::symbol(static_cast<std::size_t>(idx));
      }
      case Token::Kind::Punct:
        if (t.is("(")) {
          ts_.next();
          Scalar inner = parse_expr();
          ts_.expect_punct(")");
          return inner;
        }
        break;
      case Token::Kind::End:
        break;
    }
    ts_.error("expected an operand", {"integer", "symbol", "'i'", "'('", "'-'"});
  }

  TokenStream& ts_;
  const SymbolTable& table_;
};

/// Parses a complete expression string.
inline Scalar parse_scalar(std::string_view text, const SymbolTable& table) {
  TokenStream ts(tokenize(text));
  ExpressionParser p(ts, table);
  Scalar x = p.parse_expr();
  if (!ts.at_end()) ts.error("trailing input after expression", {"end of input", "'+'", "'-'", "'*'", "'/'", "'^'"});
  return x;
}

}  // namespace qav
