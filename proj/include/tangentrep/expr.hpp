#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace tangentrep {

/// First-order dual number v + d*eps, eps^2 = 0.
struct Dual {
  double v = 0.0;
  double d = 0.0;
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }

enum class Op { constant, variable, negate, add, sub, mul, div, pow_int, sin, cos, exp, log, sqrt };

struct ExprNode {
  Op op;
  double constant = 0.0;  // Op::constant
  int index = 0;          // zero-based for Op::variable; the exponent for Op::pow_int
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

using NodePtr = std::shared_ptr<const ExprNode>;

/// Immutable parse tree of a smooth expression over x1..x_dim.
class FieldExpr {
 public:
  FieldExpr(NodePtr root, int dim);

  const ExprNode& root() const { return *root_; }
  NodePtr root_ptr() const { return root_; }
  int dim() const { return dim_; }

  double eval(std::span<const double> x) const;

  /// Value and directional derivative along the unit vector e_{coord}.
  Dual eval_dual(std::span<const double> x, int coord) const;

  /// Fully parenthesized infix form that parses back to an identical tree.
  std::string to_string() const;

  /// Compact prefix form used in diagnostics, e.g. add(pow(var1,2),var2).
  std::string to_tree_string() const;

  friend bool operator==(const FieldExpr& a, const FieldExpr& b);

 private:
  NodePtr root_;
  int dim_;
};

/// Parses the expression grammar documented in README.md. Throws ParseError.
FieldExpr parse(std::string_view text, int dim);

bool structurally_equal(const ExprNode& a, const ExprNode& b);

}  // namespace tangentrep
