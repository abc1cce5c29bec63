#pragma once

// Scalar fields on the Heisenberg chart as immutable expression trees. Every
// node evaluates to a truncated local Taylor series at a point, which yields
// exact frame jets; derivative nodes (Z1 f, Z1b f, T f) are first-class so
// that forms can carry derivative coefficients.

#include <cmath>
#include <complex>
#include <memory>
#include <string>
#include <utility>

#include "crcalc/errors.hpp"
#include "crcalc/hgroup.hpp"
#include "crcalc/series.hpp"

namespace crcalc {

// A smooth complex function of one complex variable that knows its own
// derivatives; used for custom compositions such as cutoff profiles.
class UnaryFunction {
 public:
  virtual ~UnaryFunction() = default;
  virtual std::string name() const = 0;
  // out[k] = g^(k)(a), k = 0..order
  virtual void derivatives(cplx a, int order, cplx* out) const = 0;
};

enum class NodeKind {
  Const,
  X,
  Y,
  Z,
  Gauge,  // s = (x^2 + y^2)^2 + z^2
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Conj,
  Recip,
  Pow,
  Exp,
  Deriv,
  Apply,  // custom UnaryFunction
  Lerp,   // a + t (b - a), exact at t == 0 and t == 1
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind = NodeKind::Const;
  cplx value{};         // Const
  double exponent = 0;  // Pow
  Dir dir = Dir::Z1;    // Deriv
  NodePtr a, b, t;
  std::shared_ptr<const UnaryFunction> fn;
};

class ScalarField {
 public:
  ScalarField() : ScalarField(cplx{0.0}) {}
  ScalarField(cplx c) : node_(make_const(c)) {}   // NOLINT(google-explicit-constructor)
  ScalarField(double c) : node_(make_const(c)) {}  // NOLINT(google-explicit-constructor)
  explicit ScalarField(NodePtr node) : node_(std::move(node)) {}

  static ScalarField x() { return leaf(NodeKind::X); }
  static ScalarField y() { return leaf(NodeKind::Y); }
  static ScalarField z() { return leaf(NodeKind::Z); }
  static ScalarField gauge() { return leaf(NodeKind::Gauge); }
  static ScalarField constant(cplx c) { return ScalarField(c); }

  const NodePtr& node() const { return node_; }
  NodeKind kind() const { return node_->kind; }

  bool is_constant() const { return node_->kind == NodeKind::Const; }

  // Local Taylor series of the requested order at p.
  Series3 series(const HPoint& p, int order) const;
  cplx operator()(const HPoint& p) const { return series(p, 0).value(); }
  Jet2 jet2(const HPoint& p) const { return frame_jet(series(p, 2), p); }

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return binary(NodeKind::Add, a, b);
  }
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return binary(NodeKind::Sub, a, b);
  }
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return binary(NodeKind::Mul, a, b);
  }
  friend ScalarField operator/(const ScalarField& a, const ScalarField& b) {
    return binary(NodeKind::Div, a, b);
  }
  ScalarField operator-() const { return unary(NodeKind::Neg, *this); }

  friend ScalarField conj(const ScalarField& a) { return unary(NodeKind::Conj, a); }
  friend ScalarField recip(const ScalarField& a) { return unary(NodeKind::Recip, a); }
  friend ScalarField exp(const ScalarField& a) { return unary(NodeKind::Exp, a); }
  friend ScalarField pow(const ScalarField& a, double exponent) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Pow;
    n->exponent = exponent;
    n->a = a.node_;
    return ScalarField(NodePtr(std::move(n)));
  }
  friend ScalarField sqrt(const ScalarField& a) { return pow(a, 0.5); }
  friend ScalarField deriv(const ScalarField& a, Dir dir) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Deriv;
    n->dir = dir;
    n->a = a.node_;
    return ScalarField(NodePtr(std::move(n)));
  }
  friend ScalarField compose(std::shared_ptr<const UnaryFunction> fn, const ScalarField& a) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Apply;
    n->fn = std::move(fn);
    n->a = a.node_;
    return ScalarField(NodePtr(std::move(n)));
  }
  friend ScalarField lerp(const ScalarField& t, const ScalarField& a, const ScalarField& b) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Lerp;
    n->t = t.node_;
    n->a = a.node_;
    n->b = b.node_;
    return ScalarField(NodePtr(std::move(n)));
  }

 private:
  static NodePtr make_const(cplx c) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Const;
    n->value = c;
    return n;
  }
  static ScalarField leaf(NodeKind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return ScalarField(NodePtr(std::move(n)));
  }
  static ScalarField unary(NodeKind k, const ScalarField& a) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = a.node_;
    return ScalarField(NodePtr(std::move(n)));
  }
  static ScalarField binary(NodeKind k, const ScalarField& a, const ScalarField& b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = a.node_;
    n->b = b.node_;
    return ScalarField(NodePtr(std::move(n)));
  }

  NodePtr node_;
};

// Short human-readable label of a node, used in error messages.
std::string describe(const Node& n);

namespace detail {

inline bool is_nonneg_integer(double e) { return e >= 0 && e == std::floor(e) && e <= 64; }

inline Series3 eval_node(const Node& n, const HPoint& p, int order) {
  switch (n.kind) {
    case NodeKind::Const: return Series3::constant(n.value, order);
    case NodeKind::X: return Series3::variable(0, p.x, order);
    case NodeKind::Y: return Series3::variable(1, p.y, order);
    case NodeKind::Z: return Series3::variable(2, p.z, order);
    case NodeKind::Gauge: {
      const Series3 x = Series3::variable(0, p.x, order);
      const Series3 y = Series3::variable(1, p.y, order);
      const Series3 z = Series3::variable(2, p.z, order);
      const Series3 r2 = x * x + y * y;
      return r2 * r2 + z * z;
    }
    case NodeKind::Add: return eval_node(*n.a, p, order) + eval_node(*n.b, p, order);
    case NodeKind::Sub: return eval_node(*n.a, p, order) - eval_node(*n.b, p, order);
    case NodeKind::Mul: return eval_node(*n.a, p, order) * eval_node(*n.b, p, order);
    case NodeKind::Div: {
      const Series3 d = eval_node(*n.b, p, order);
      if (d.value() == cplx{}) throw DomainError("division by zero in " + describe(n));
      return eval_node(*n.a, p, order) * series_recip(d);
    }
    case NodeKind::Neg: return -eval_node(*n.a, p, order);
    case NodeKind::Conj: return conj(eval_node(*n.a, p, order));
    case NodeKind::Recip: {
      const Series3 d = eval_node(*n.a, p, order);
      if (d.value() == cplx{}) throw DomainError("reciprocal of zero in " + describe(n));
      return series_recip(d);
    }
    case NodeKind::Pow: {
      const Series3 base = eval_node(*n.a, p, order);
      if (is_nonneg_integer(n.exponent)) {
        Series3 r = Series3::constant(1.0, order);
        for (int k = 0; k < static_cast<int>(n.exponent); ++k) r = r * base;
        return r;
      }
      if (base.value() == cplx{})
        throw DomainError("power " + std::to_string(n.exponent) + " of zero base in " +
                          describe(n));
      return series_pow(base, n.exponent);
    }
    case NodeKind::Exp: return series_exp(eval_node(*n.a, p, order));
    case NodeKind::Deriv: {
      if (order + 1 > kMaxSeriesOrder)
        throw DomainError("derivative nesting exceeds series order in " + describe(n));
      return apply_frame(eval_node(*n.a, p, order + 1), n.dir, p);
    }
    case NodeKind::Apply: {
      const Series3 arg = eval_node(*n.a, p, order);
      std::array<cplx, kMaxSeriesOrder + 1> d{};
      n.fn->derivatives(arg.value(), order, d.data());
      return arg.compose(d.data());
    }
    case NodeKind::Lerp: {
      const Series3 t = eval_node(*n.t, p, order);
      if (t.is_constant() && t.value() == cplx{0.0}) return eval_node(*n.a, p, order);
      if (t.is_constant() && t.value() == cplx{1.0}) return eval_node(*n.b, p, order);
      const Series3 a = eval_node(*n.a, p, order);
      return a + t * (eval_node(*n.b, p, order) - a);
    }
  }
  throw DomainError("unknown node kind");
}

}  // namespace detail

inline Series3 ScalarField::series(const HPoint& p, int order) const {
  return detail::eval_node(*node_, p, order);
}

inline Jet2 jet2_eval(const ScalarField& f, const HPoint& p) { return f.jet2(p); }

// Frame derivative field Z1 f, Z1b f or T f.
inline ScalarField d1(const ScalarField& f) { return deriv(f, Dir::Z1); }
inline ScalarField d1b(const ScalarField& f) { return deriv(f, Dir::Z1b); }
inline ScalarField d0(const ScalarField& f) { return deriv(f, Dir::T); }

}  // namespace crcalc

#include "crcalc/printer.hpp"
