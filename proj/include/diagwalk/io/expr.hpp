#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "diagwalk/bivar/bipoly.hpp"
#include "diagwalk/bivar/ops.hpp"
#include "diagwalk/core/error.hpp"
#include "diagwalk/core/rational.hpp"

namespace diagwalk {

/// Syntax tree of a rational expression in at most two declared variables.
struct Expr {
  enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Number;
  Integer value;       // Number
  int variable = 0;    // Variable: index into the declared list
  unsigned long exponent = 0;  // Pow
  std::vector<Expr> args;
  int line = 1, column = 1;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(const std::string& text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  Expr parse() {
    skip();
    if (pos_ >= text_.size()) error(ErrorCode::Syntax, "empty expression");
    Expr e = sum();
    skip();
    if (pos_ < text_.size()) error(ErrorCode::Syntax, std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  const std::string& text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  [[noreturn]] void error(ErrorCode code, const std::string& msg) const { throw ParseError(code, msg, line_, col_); }
  [[noreturn]] void error_at(ErrorCode code, const std::string& msg, int line, int col) const {
    throw ParseError(code, msg, line, col);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }
  Expr node(Expr::Kind k, std::vector<Expr> args, int line, int col) const {
    Expr e;
    e.kind = k;
    e.args = std::move(args);
    e.line = line;
    e.column = col;
    return e;
  }

  Expr sum() {
    Expr left = product();
    while (true) {
      skip();
      int l = line_, c = col_;
      if (accept('+')) {
        left = node(Expr::Kind::Add, {std::move(left), product()}, l, c);
      } else if (accept('-')) {
        left = node(Expr::Kind::Sub, {std::move(left), product()}, l, c);
      } else {
        return left;
      }
    }
  }

  Expr product() {
    Expr left = unary();
    while (true) {
      skip();
      int l = line_, c = col_;
      if (accept('*')) {
        left = node(Expr::Kind::Mul, {std::move(left), unary()}, l, c);
      } else if (accept('/')) {
        left = node(Expr::Kind::Div, {std::move(left), unary()}, l, c);
      } else {
        return left;
      }
    }
  }

  Expr unary() {
    skip();
    int l = line_, c = col_;
    if (accept('-')) return node(Expr::Kind::Neg, {unary()}, l, c);
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    skip();
    int l = line_, c = col_;
    if (!accept('^')) return base;
    skip();
    int el = line_, ec = col_;
    Expr e = exponent_expr();
    Integer v = constant_value(e, el, ec);
    if (v < 0) error_at(ErrorCode::BadExponent, "negative exponent", el, ec);
    if (v > 100000) error_at(ErrorCode::BadExponent, "exponent too large", el, ec);
    Expr p = node(Expr::Kind::Pow, {std::move(base)}, l, c);
    p.exponent = v.get_ui();
    return p;
  }

  // right-associative; a leading minus is accepted so that it can be reported
  Expr exponent_expr() {
    skip();
    int l = line_, c = col_;
    if (accept('-')) return node(Expr::Kind::Neg, {exponent_expr()}, l, c);
    return power();
  }

  Integer constant_value(const Expr& e, int l, int c) const {
    switch (e.kind) {
      case Expr::Kind::Number: return e.value;
      case Expr::Kind::Variable: error_at(ErrorCode::BadExponent, "exponent must be an integer constant", l, c);
      case Expr::Kind::Neg: return -constant_value(e.args[0], l, c);
      case Expr::Kind::Add: return constant_value(e.args[0], l, c) + constant_value(e.args[1], l, c);
      case Expr::Kind::Sub: return constant_value(e.args[0], l, c) - constant_value(e.args[1], l, c);
      case Expr::Kind::Mul: return constant_value(e.args[0], l, c) * constant_value(e.args[1], l, c);
      case Expr::Kind::Pow: {
        Integer b = constant_value(e.args[0], l, c), r(1);
        if (e.exponent > 64) error_at(ErrorCode::BadExponent, "exponent too large", l, c);
        for (unsigned long k = 0; k < e.exponent; ++k) r *= b;
        return r;
      }
      case Expr::Kind::Div: break;
    }
    error_at(ErrorCode::BadExponent, "exponent must be an integer constant", l, c);
  }

  Expr primary() {
    skip();
    int l = line_, c = col_;
    if (pos_ >= text_.size()) error(ErrorCode::Syntax, "unexpected end of input");
    char ch = text_[pos_];
    if (ch == '(') {
      advance();
      Expr e = sum();
      if (!accept(')')) error(ErrorCode::Syntax, "expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      if (pos_ < text_.size() && (text_[pos_] == '.' || std::isalpha(static_cast<unsigned char>(text_[pos_]))))
        error(ErrorCode::Syntax, std::string("unexpected '") + text_[pos_] + "' after number");
      Expr e = node(Expr::Kind::Number, {}, l, c);
      e.value = Integer(text_.substr(start, pos_ - start));
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) advance();
      std::string name = text_.substr(start, pos_ - start);
      for (std::size_t k = 0; k < vars_.size(); ++k)
        if (vars_[k] == name) {
          Expr e = node(Expr::Kind::Variable, {}, l, c);
          e.variable = static_cast<int>(k);
          return e;
        }
      error_at(ErrorCode::UnknownVariable, "unknown variable '" + name + "'", l, c);
    }
    error(ErrorCode::Syntax, std::string("unexpected '") + ch + "'");
  }
};

inline BiRational br_add(const BiRational& a, const BiRational& b, bool subtract) {
  BiPoly bn = subtract ? -b.num : b.num;
  if (a.den == b.den) return normalize_birational(a.num + bn, a.den);
  return normalize_birational(a.num * b.den + bn * a.den, a.den * b.den);
}

}  // namespace detail

/// Parses text over the declared variables (at most two; the first maps to
/// x and the second to y).
inline Expr parse_expr(const std::string& text, const std::vector<std::string>& variables) {
  if (variables.size() > 2) fail(ErrorCode::OutOfRange, "parse_expr: at most two variables");
  return detail::ExprParser(text, variables).parse();
}

/// Exact value of an expression as a reduced fraction.
inline BiRational evaluate(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return {BiPoly::constant(Rational(e.value)), BiPoly::constant(Rational(1))};
    case Expr::Kind::Variable:
      return {e.variable == 0 ? BiPoly::x() : BiPoly::y(), BiPoly::constant(Rational(1))};
    case Expr::Kind::Neg: {
      BiRational a = evaluate(e.args[0]);
      return {-a.num, a.den};
    }
    case Expr::Kind::Add: return detail::br_add(evaluate(e.args[0]), evaluate(e.args[1]), false);
    case Expr::Kind::Sub: return detail::br_add(evaluate(e.args[0]), evaluate(e.args[1]), true);
    case Expr::Kind::Mul: {
      BiRational a = evaluate(e.args[0]), b = evaluate(e.args[1]);
      return normalize_birational(a.num * b.num, a.den * b.den);
    }
    case Expr::Kind::Div: {
      BiRational a = evaluate(e.args[0]), b = evaluate(e.args[1]);
      if (b.num.is_zero())
        throw ParseError(ErrorCode::ZeroDenominator, "division by zero", e.line, e.column);
      return normalize_birational(a.num * b.den, a.den * b.num);
    }
    case Expr::Kind::Pow: {
      BiRational a = evaluate(e.args[0]);
      return normalize_birational(a.num.pow(static_cast<unsigned>(e.exponent)), a.den.pow(static_cast<unsigned>(e.exponent)));
    }
  }
  return {};
}

inline BiRational parse_rational_function(const std::string& text, const std::vector<std::string>& variables) {
  return evaluate(parse_expr(text, variables));
}

}  // namespace diagwalk
