#pragma once

#include <cctype>
#include <string>

#include "weylkit/expr.hpp"

namespace weylkit {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

// Grammar (whitespace insignificant):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-')* atom ('^' integer)?
//   atom   := integer | variable | '(' expr ')'
// Exponents are integers; negative exponents are rewritten as reciprocals.
class Parser {
public:
  Parser(std::string text, ChartPtr chart)
      : s_(std::move(text)), chart_(std::move(chart)) {}

  Expr parse() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

private:
  Expr parse_expr() {
    Expr e = parse_term();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        e = e + parse_term();
      } else if (peek() == '-') {
        ++pos_;
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        e = e * parse_factor();
      } else if (peek() == '/') {
        std::size_t at = pos_;
        ++pos_;
        Expr d = parse_factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        e = e / d;
      } else {
        return e;
      }
    }
  }

  Expr parse_factor() {
    skip_ws();
    int sign = 1;
    while (peek() == '+' || peek() == '-') {
      if (peek() == '-') sign = -sign;
      ++pos_;
      skip_ws();
    }
    Expr a = parse_atom();
    skip_ws();
    if (peek() == '^') {
      std::size_t at = ++pos_;
      skip_ws();
      int esign = 1;
      if (peek() == '-') {
        esign = -1;
        ++pos_;
      } else if (peek() == '+') {
        ++pos_;
      }
      skip_ws();
      if (!std::isdigit(peek())) throw ParseError("integer exponent expected", at);
      long k = 0;
      while (std::isdigit(peek())) {
        k = k * 10 + (peek() - '0');
        if (k > 100000) throw ParseError("exponent too large", at);
        ++pos_;
      }
      if (esign < 0 && a.is_zero()) throw ParseError("zero to a negative power", at);
      a = a.pow(static_cast<int>(esign * k));
    }
    return sign < 0 ? -a : a;
  }

  Expr parse_atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      std::size_t open = pos_++;
      Expr e = parse_expr();
      skip_ws();
      if (peek() != ')') throw ParseError("missing closing parenthesis", open);
      ++pos_;
      return e;
    }
    if (std::isdigit(c)) {
      Int v = 0;
      while (std::isdigit(peek())) {
        v = v * 10 + (peek() - '0');
        ++pos_;
      }
      return Expr::integer(chart_, v);
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t at = pos_;
      std::string name;
      while (std::isalnum(peek()) || peek() == '_') name.push_back(s_[pos_++]);
      int idx = chart_->var_index(name);
      if (idx < 0) throw ParseError("unknown variable '" + name + "'", at);
      return Expr::variable(chart_, idx);
    }
    throw ParseError("expression expected", pos_);
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string s_;
  ChartPtr chart_;
  std::size_t pos_ = 0;
};

inline Expr parse_expr(const std::string& text, ChartPtr chart) {
  return Parser(text, std::move(chart)).parse();
}

} // namespace weylkit
