#pragma once

// Holomorphic expressions: the user-supplied functions a(z), b(z), c(z),
// w(z), f(b), phi(xi, theta) that parameterize generators and solutions.
//
// Grammar (no implicit multiplication, `i` and `pi` are reserved):
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := ("-")? power
//   power  := atom ("^" factor)?
//   atom   := number | "i" | "pi" | ident | ident "(" expr ("," expr)* ")" | "(" expr ")"
// with functions exp, ln and sqrt.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "foliation/jet.hpp"

namespace foliation {

enum class NodeKind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Ln, Sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  Complex value{};   // Const
  int var = -1;      // Var: index into the declared variable list
  NodePtr lhs;       // unary operand or left operand
  NodePtr rhs;
};

class Expr {
 public:
  Expr() = default;
  Expr(NodePtr root, std::vector<std::string> variables);

  const NodePtr& root() const noexcept { return root_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t arity() const noexcept { return variables_.size(); }
  bool empty() const noexcept { return root_ == nullptr; }

  /// Infix form with minimal parentheses; parse(to_string()) reproduces it.
  std::string to_string() const;
  /// Structural form, e.g. "Add(Pow(z,2),Mul(i,z))".
  std::string to_tree() const;

  /// True when the expression is a constant with value zero.
  bool is_zero() const;

 private:
  NodePtr root_;
  std::vector<std::string> variables_;
};

Expr parse(std::string_view text, std::vector<std::string> variables);

/// Expression with the same variables and every constant conjugated: the
/// conjugate-analytic partner bbar(w) = conj(b(conj(w))) for real-analytic
/// principal-branch building blocks.
Expr conjugate(const Expr& e);

/// Replace variables by sub-expressions declared over `variables`.
Expr substitute(const Expr& e, std::span<const Expr> replacements,
                std::vector<std::string> variables);

// Construction helpers for programmatically assembled expressions.
NodePtr make_const(Complex value);
NodePtr make_var(int index);
NodePtr make_unary(NodeKind kind, NodePtr operand);
NodePtr make_binary(NodeKind kind, NodePtr lhs, NodePtr rhs);

/// Evaluates `e` with each declared variable replaced by the matching jet.
Jet eval(const Expr& e, std::span<const Jet> arguments, double eps = kSingularEps);

/// Univariate Taylor jet of a one-variable expression about `at`
/// (coefficient k = e^(k)(at)/k!, stored in slot 0).
Jet eval_jet1(const Expr& e, Complex at, int order);
/// Jet of the conjugate-analytic partner at zbar = at_zbar.
Jet bar_eval(const Expr& e, Complex at_zbar, int order);
/// Multivariate jet over the declared variables (at most three).
Jet eval_jetN(const Expr& e, std::span<const Complex> at, int order);

/// Derivatives e(at), e'(at), ..., e^(n)(at) of a one-variable expression.
std::vector<Complex> derivatives(const Expr& e, Complex at, int n);

/// Jet of the n-th derivative e^(n) composed with an arbitrary jet argument.
Jet apply(const Expr& e, const Jet& argument, int derivative = 0);

}  // namespace foliation
