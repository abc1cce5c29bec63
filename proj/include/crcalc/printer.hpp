#pragma once

// Fully parenthesised printing of field expressions. Trees produced by
// parse_field print to text that parses back to an identical tree.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "crcalc/field.hpp"

namespace crcalc {

namespace detail {

// Shortest decimal text that reads back to exactly `v`.
inline std::string shortest_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline void print_node(const Node& n, std::string& out);

inline void print_const(cplx c, std::string& out) {
  if (c.imag() == 0.0) {
    if (c.real() < 0 || std::signbit(c.real()))
      out += "(-" + shortest_double(-c.real()) + ")";
    else
      out += shortest_double(c.real());
  } else if (c.real() == 0.0 && !std::signbit(c.real()) && c.imag() > 0) {
    out += shortest_double(c.imag()) + "i";
  } else {
    out += "(" + shortest_double(c.real());
    out += c.imag() < 0 ? "-" : "+";
    out += shortest_double(std::abs(c.imag())) + "i)";
  }
}

inline void print_binary(const Node& n, const char* op, std::string& out) {
  out += "(";
  print_node(*n.a, out);
  out += op;
  print_node(*n.b, out);
  out += ")";
}

inline void print_call(const char* name, const Node& arg, std::string& out) {
  out += name;
  out += "(";
  print_node(arg, out);
  out += ")";
}

inline void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Const: print_const(n.value, out); return;
    case NodeKind::X: out += "x"; return;
    case NodeKind::Y: out += "y"; return;
    case NodeKind::Z: out += "z"; return;
    case NodeKind::Gauge: out += "s"; return;
    case NodeKind::Add: print_binary(n, "+", out); return;
    case NodeKind::Sub: print_binary(n, "-", out); return;
    case NodeKind::Mul: print_binary(n, "*", out); return;
    case NodeKind::Div: print_binary(n, "/", out); return;
    case NodeKind::Neg:
      out += "(-";
      print_node(*n.a, out);
      out += ")";
      return;
    case NodeKind::Conj: print_call("conj", *n.a, out); return;
    case NodeKind::Exp: print_call("exp", *n.a, out); return;
    case NodeKind::Recip:
      out += "(1/";
      print_node(*n.a, out);
      out += ")";
      return;
    case NodeKind::Pow:
      if (n.a->kind == NodeKind::Pow) {
        out += "(";
        print_node(*n.a, out);
        out += ")";
      } else {
        print_node(*n.a, out);
      }
      out += "^" + shortest_double(n.exponent);
      return;
    case NodeKind::Deriv: print_call(dir_name(n.dir), *n.a, out); return;
    case NodeKind::Apply: print_call(n.fn->name().c_str(), *n.a, out); return;
    case NodeKind::Lerp:
      out += "lerp(";
      print_node(*n.t, out);
      out += ",";
      print_node(*n.a, out);
      out += ",";
      print_node(*n.b, out);
      out += ")";
      return;
  }
}

}  // namespace detail

inline std::string to_string(const ScalarField& f) {
  std::string out;
  detail::print_node(*f.node(), out);
  return out;
}

inline std::string describe(const Node& n) {
  std::string out;
  detail::print_node(n, out);
  if (out.size() > 72) out = out.substr(0, 69) + "...";
  return "node '" + out + "'";
}

}  // namespace crcalc
