#pragma once

// Recursive-descent parser for field expressions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' signed-number)?
//   primary := number ['i'] | 'i' | x | y | z | s | exp '(' expr ')' | conj '(' expr ')'
//            | '(' expr ')'
//
// s is the polynomial gauge (x^2 + y^2)^2 + z^2. Exponents are integers or
// +-0.5. Literal arithmetic is folded so that "-0.1" and "0.2 - 0.3i" are single
// constants; this makes to_string followed by parse_field reproduce the tree.

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>
#include <string>
#include <string_view>

#include "crcalc/errors.hpp"
#include "crcalc/field.hpp"
#include "crcalc/printer.hpp"

namespace crcalc {

namespace detail {

class FieldParser {
 public:
  explicit FieldParser(std::string_view src) : src_(src) {}

  ScalarField parse() {
    skip_space();
    const Parsed e = expr();
    skip_space();
    if (pos_ < src_.size()) fail({"operator", "end of input"}, "unexpected '" + std::string(1, src_[pos_]) + "'");
    return e.field;
  }

 private:
  struct Parsed {
    ScalarField field;
    bool literal = false;    // a bare constant written as a literal
    bool imaginary = false;  // literal with an 'i' suffix
  };

  [[noreturn]] void fail(std::set<std::string> expected, const std::string& what) const {
    throw SyntaxError(line_, col_, std::move(expected), what);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    advance();
    return true;
  }

  static const std::set<std::string>& operand_set() {
    static const std::set<std::string> s{"number", "variable", "(", "-", "exp", "conj"};
    return s;
  }

  static ScalarField constant(cplx c) { return ScalarField(c); }
  static cplx value_of(const Parsed& p) { return p.field.node()->value; }

  Parsed expr() {
    Parsed lhs = term();
    for (;;) {
      skip_space();
      const char op = peek();
      if (op != '+' && op != '-') return lhs;
      advance();
      const Parsed rhs = term();
      // real literal +- imaginary literal is one complex constant
      if (lhs.literal && !lhs.imaginary && value_of(lhs).imag() == 0.0 && rhs.literal &&
          rhs.imaginary && value_of(rhs).real() == 0.0) {
        const cplx a = value_of(lhs), b = value_of(rhs);
        lhs = {constant(op == '+' ? a + b : a - b), true, false};
        continue;
      }
      lhs = {op == '+' ? lhs.field + rhs.field : lhs.field - rhs.field, false, false};
    }
  }

  Parsed term() {
    Parsed lhs = unary();
    for (;;) {
      skip_space();
      const char op = peek();
      if (op != '*' && op != '/') return lhs;
      advance();
      const Parsed rhs = unary();
      lhs = {op == '*' ? lhs.field * rhs.field : lhs.field / rhs.field, false, false};
    }
  }

  Parsed unary() {
    skip_space();
    if (peek() == '-') {
      advance();
      const Parsed inner = unary();
      if (inner.literal) return {constant(-value_of(inner)), true, inner.imaginary};
      return {-inner.field, false, false};
    }
    if (peek() == '+') {
      advance();
      return unary();
    }
    return power();
  }

  Parsed power() {
    Parsed base = primary();
    skip_space();
    if (peek() != '^') return base;
    advance();
    skip_space();
    const int line = line_, col = col_;
    double sign = 1.0;
    if (peek() == '-' || peek() == '+') {
      if (peek() == '-') sign = -1.0;
      advance();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek())) && peek() != '.')
      fail({"number"}, "exponent must be a number");
    const double e = sign * number();
    if (!(e == std::floor(e) || std::abs(e) == 0.5))
      throw SyntaxError(line, col, {"integer", "0.5", "-0.5"},
                        "exponent must be an integer or +-0.5");
    return {pow(base.field, e), false, false};
  }

  double number() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    if (peek() == '.') {
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      const std::size_t save_pos = pos_;
      const int save_col = col_;
      advance();
      if (peek() == '+' || peek() == '-') advance();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      } else {
        pos_ = save_pos;  // "2exp(..)" style text is not an exponent
        col_ = save_col;
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    if (text == ".") fail({"number"}, "malformed number");
    return std::strtod(text.c_str(), nullptr);
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  Parsed call(ScalarField (*fn)(const ScalarField&)) {
    if (!accept('(')) fail({"("}, "expected '(' after function name");
    skip_space();
    if (at_end()) fail(operand_set(), "unexpected end of input");
    const Parsed arg = expr();
    if (!accept(')')) fail({")", "operator"}, at_end() ? "unexpected end of input" : "expected ')'");
    return {fn(arg.field), false, false};
  }

  Parsed primary() {
    skip_space();
    if (at_end()) fail(operand_set(), "unexpected end of input");
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const double v = number();
      if (peek() == 'i' && !std::isalnum(static_cast<unsigned char>(next_char()))) {
        advance();
        return {constant(cplx(0.0, v)), true, true};
      }
      return {constant(v), true, false};
    }
    if (c == '(') {
      advance();
      const Parsed inner = expr();
      if (!accept(')')) fail({")", "operator"}, at_end() ? "unexpected end of input" : "expected ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const int line = line_, col = col_;
      const std::string id = identifier();
      if (id == "x") return {ScalarField::x(), false, false};
      if (id == "y") return {ScalarField::y(), false, false};
      if (id == "z") return {ScalarField::z(), false, false};
      if (id == "s") return {ScalarField::gauge(), false, false};
      if (id == "i") return {constant(cplx(0.0, 1.0)), true, true};
      if (id == "exp") return call([](const ScalarField& a) { return exp(a); });
      if (id == "conj") return call([](const ScalarField& a) { return conj(a); });
      throw SyntaxError(line, col, operand_set(), "unknown identifier '" + id + "'");
    }
    fail(operand_set(), std::string("unexpected '") + c + "'");
  }

  char next_char() const { return pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0'; }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline bool same_node(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Const: return a.value == b.value;
    case NodeKind::X:
    case NodeKind::Y:
    case NodeKind::Z:
    case NodeKind::Gauge: return true;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: return same_node(*a.a, *b.a) && same_node(*a.b, *b.b);
    case NodeKind::Neg:
    case NodeKind::Conj:
    case NodeKind::Recip:
    case NodeKind::Exp: return same_node(*a.a, *b.a);
    case NodeKind::Pow: return a.exponent == b.exponent && same_node(*a.a, *b.a);
    case NodeKind::Deriv: return a.dir == b.dir && same_node(*a.a, *b.a);
    case NodeKind::Apply: return a.fn == b.fn && same_node(*a.a, *b.a);
    case NodeKind::Lerp:
      return same_node(*a.t, *b.t) && same_node(*a.a, *b.a) && same_node(*a.b, *b.b);
  }
  return false;
}

}  // namespace detail

// Throws SyntaxError with line, column and the expected-token set.
inline ScalarField parse_field(std::string_view src) { return detail::FieldParser(src).parse(); }

// Structural equality of expression trees.
inline bool same_tree(const ScalarField& a, const ScalarField& b) {
  return detail::same_node(*a.node(), *b.node());
}

}  // namespace crcalc
