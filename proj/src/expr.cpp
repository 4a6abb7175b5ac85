#include "foliation/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace foliation {
namespace {

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecNeg = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

std::string format_real(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, end);
}

struct Printed {
  std::string text;
  int prec;
};

Printed print_const(Complex c) {
  const double re = c.real();
  const double im = c.imag();
  if (im == 0.0) {
    if (re < 0.0 || (re == 0.0 && std::signbit(re))) return {format_real(re), kPrecNeg};
    return {format_real(re), kPrecAtom};
  }
  std::string imag_part;
  const double mag = std::abs(im);
  imag_part = mag == 1.0 ? "i" : format_real(mag) + "*i";
  if (re == 0.0) {
    if (im < 0.0) return {"-" + imag_part, kPrecNeg};
    return {imag_part, mag == 1.0 ? kPrecAtom : kPrecMul};
  }
  return {format_real(re) + (im < 0.0 ? "-" : "+") + imag_part, kPrecAdd};
}

std::string wrap(const Printed& p, int min_prec) {
  return p.prec >= min_prec ? p.text : "(" + p.text + ")";
}

Printed print(const NodePtr& n, const std::vector<std::string>& vars) {
  switch (n->kind) {
    case NodeKind::Const: return print_const(n->value);
    case NodeKind::Var: return {vars.at(static_cast<std::size_t>(n->var)), kPrecAtom};
    case NodeKind::Neg: return {"-" + wrap(print(n->lhs, vars), kPrecPow), kPrecNeg};
    case NodeKind::Add:
    case NodeKind::Sub: {
      const char* op = n->kind == NodeKind::Add ? "+" : "-";
      return {wrap(print(n->lhs, vars), kPrecAdd) + op + wrap(print(n->rhs, vars), kPrecAdd + 1),
              kPrecAdd};
    }
    case NodeKind::Mul:
    case NodeKind::Div: {
      const char* op = n->kind == NodeKind::Mul ? "*" : "/";
      return {wrap(print(n->lhs, vars), kPrecMul) + op + wrap(print(n->rhs, vars), kPrecMul + 1),
              kPrecMul};
    }
    case NodeKind::Pow:
      return {wrap(print(n->lhs, vars), kPrecAtom) + "^" + wrap(print(n->rhs, vars), kPrecNeg),
              kPrecPow};
    case NodeKind::Exp: return {"exp(" + print(n->lhs, vars).text + ")", kPrecAtom};
    case NodeKind::Ln: return {"ln(" + print(n->lhs, vars).text + ")", kPrecAtom};
    case NodeKind::Sqrt: return {"sqrt(" + print(n->lhs, vars).text + ")", kPrecAtom};
  }
  return {"?", kPrecAtom};
}

std::string tree(const NodePtr& n, const std::vector<std::string>& vars) {
  auto binary = [&](const char* name) {
    return std::string(name) + "(" + tree(n->lhs, vars) + "," + tree(n->rhs, vars) + ")";
  };
  auto unary = [&](const char* name) { return std::string(name) + "(" + tree(n->lhs, vars) + ")"; };
  switch (n->kind) {
    case NodeKind::Const: return print_const(n->value).text;
    case NodeKind::Var: return vars.at(static_cast<std::size_t>(n->var));
    case NodeKind::Neg: return unary("Neg");
    case NodeKind::Add: return binary("Add");
    case NodeKind::Sub: return binary("Sub");
    case NodeKind::Mul: return binary("Mul");
    case NodeKind::Div: return binary("Div");
    case NodeKind::Pow: return binary("Pow");
    case NodeKind::Exp: return unary("Exp");
    case NodeKind::Ln: return unary("Ln");
    case NodeKind::Sqrt: return unary("Sqrt");
  }
  return "?";
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  NodePtr run() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(pos_, "empty expression");
    NodePtr e = expr();
    skip_space();
    if (pos_ < text_.size()) throw ParseError(pos_, "unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) throw ParseError(pos_, std::string("expected '") + c + "' before end of input");
      throw ParseError(pos_, std::string("expected '") + c + "'");
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make_binary(NodeKind::Add, lhs, term());
      else if (accept('-')) lhs = make_binary(NodeKind::Sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) lhs = make_binary(NodeKind::Mul, lhs, factor());
      else if (accept('/')) lhs = make_binary(NodeKind::Div, lhs, factor());
      else return lhs;
    }
  }

  NodePtr factor() {
    if (accept('-')) return make_unary(NodeKind::Neg, power());
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make_binary(NodeKind::Pow, base, factor());
    return base;
  }

  NodePtr atom() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(pos_, "unexpected character '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError(start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw ParseError(start, "malformed number exponent");
    }
    double value = 0.0;
    const auto* first = text_.data() + start;
    auto [ptr, ec] = std::from_chars(first, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) throw ParseError(start, "malformed number");
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      throw ParseError(pos_, "implicit multiplication is not supported");
    }
    return make_const(value);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      NodeKind kind;
      if (name == "exp") kind = NodeKind::Exp;
      else if (name == "ln") kind = NodeKind::Ln;
      else if (name == "sqrt") kind = NodeKind::Sqrt;
      else throw ParseError(start, "unknown function '" + name + "'");
      ++pos_;
      NodePtr arg = expr();
      if (accept(',')) throw ParseError(pos_ - 1, "function '" + name + "' takes one argument");
      expect(')');
      return make_unary(kind, arg);
    }
    if (name == "i") return make_const(Complex(0.0, 1.0));
    if (name == "pi") return make_const(std::numbers::pi);
    const auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw ParseError(start, "unknown identifier '" + name + "'");
    return make_var(static_cast<int>(it - vars_.begin()));
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

NodePtr conjugate_node(const NodePtr& n) {
  if (!n) return n;
  if (n->kind == NodeKind::Const) return make_const(std::conj(n->value));
  if (n->kind == NodeKind::Var) return n;
  auto copy = std::make_shared<Node>(*n);
  copy->lhs = conjugate_node(n->lhs);
  copy->rhs = conjugate_node(n->rhs);
  return copy;
}

NodePtr substitute_node(const NodePtr& n, std::span<const Expr> repl) {
  if (!n) return n;
  if (n->kind == NodeKind::Var) return repl[static_cast<std::size_t>(n->var)].root();
  if (n->kind == NodeKind::Const) return n;
  auto copy = std::make_shared<Node>(*n);
  copy->lhs = substitute_node(n->lhs, repl);
  copy->rhs = substitute_node(n->rhs, repl);
  return copy;
}

bool integer_exponent(const Node& n, int& out) {
  if (n.kind != NodeKind::Const || n.value.imag() != 0.0) return false;
  const double r = n.value.real();
  if (std::abs(r) > 1024.0 || r != std::round(r)) return false;
  out = static_cast<int>(r);
  return true;
}

Jet eval_node(const NodePtr& n, std::span<const Jet> args, const Base& base, int order, double eps) {
  switch (n->kind) {
    case NodeKind::Const: return Jet::constant(n->value, base, order);
    case NodeKind::Var: return args[static_cast<std::size_t>(n->var)];
    case NodeKind::Neg: return -eval_node(n->lhs, args, base, order, eps);
    case NodeKind::Add:
      return eval_node(n->lhs, args, base, order, eps) + eval_node(n->rhs, args, base, order, eps);
    case NodeKind::Sub:
      return eval_node(n->lhs, args, base, order, eps) - eval_node(n->rhs, args, base, order, eps);
    case NodeKind::Mul:
      return eval_node(n->lhs, args, base, order, eps) * eval_node(n->rhs, args, base, order, eps);
    case NodeKind::Div:
      return divide(eval_node(n->lhs, args, base, order, eps), eval_node(n->rhs, args, base, order, eps), eps);
    case NodeKind::Pow: {
      Jet b = eval_node(n->lhs, args, base, order, eps);
      int k = 0;
      if (integer_exponent(*n->rhs, k)) return pow(b, k, eps);
      if (n->rhs->kind == NodeKind::Const) return pow(b, n->rhs->value, eps);
      return exp(eval_node(n->rhs, args, base, order, eps) * log(b, eps));
    }
    case NodeKind::Exp: return exp(eval_node(n->lhs, args, base, order, eps));
    case NodeKind::Ln: return log(eval_node(n->lhs, args, base, order, eps), eps);
    case NodeKind::Sqrt: return sqrt(eval_node(n->lhs, args, base, order, eps), eps);
  }
  throw Error(ErrorKind::DomainError, "corrupt expression node");
}

void require_univariate(const Expr& e, const char* what) {
  if (e.arity() != 1) {
    throw Error(ErrorKind::ArityMismatch,
                std::string(what) + " needs a one-variable expression, got " + std::to_string(e.arity()));
  }
}

}  // namespace

Expr::Expr(NodePtr root, std::vector<std::string> variables)
    : root_(std::move(root)), variables_(std::move(variables)) {}

std::string Expr::to_string() const { return root_ ? print(root_, variables_).text : std::string(); }
std::string Expr::to_tree() const { return root_ ? tree(root_, variables_) : std::string(); }

bool Expr::is_zero() const {
  return root_ && root_->kind == NodeKind::Const && root_->value == Complex(0.0, 0.0);
}

NodePtr make_const(Complex value) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Const;
  n->value = value;
  return n;
}

NodePtr make_var(int index) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Var;
  n->var = index;
  return n;
}

NodePtr make_unary(NodeKind kind, NodePtr operand) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(operand);
  return n;
}

NodePtr make_binary(NodeKind kind, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

Expr parse(std::string_view text, std::vector<std::string> variables) {
  for (const auto& v : variables) {
    if (v == "i" || v == "pi" || v == "exp" || v == "ln" || v == "sqrt") {
      throw ParseError(0, "'" + v + "' is reserved and cannot be declared as a variable");
    }
  }
  Parser p(text, variables);
  NodePtr root = p.run();
  return Expr(std::move(root), std::move(variables));
}

Expr conjugate(const Expr& e) { return Expr(conjugate_node(e.root()), e.variables()); }

Expr substitute(const Expr& e, std::span<const Expr> replacements, std::vector<std::string> variables) {
  if (replacements.size() != e.arity()) {
    throw Error(ErrorKind::ArityMismatch, "substitution needs one replacement per variable");
  }
  return Expr(substitute_node(e.root(), replacements), std::move(variables));
}

Jet eval(const Expr& e, std::span<const Jet> arguments, double eps) {
  if (arguments.size() != e.arity()) {
    throw Error(ErrorKind::ArityMismatch, "expression declares " + std::to_string(e.arity()) +
                                              " variables but " + std::to_string(arguments.size()) +
                                              " arguments were supplied");
  }
  Base base{};
  int order = 0;
  if (!arguments.empty()) {
    base = arguments.front().base();
    order = arguments.front().order();
    for (const auto& a : arguments) order = std::min(order, a.order());
  }
  return eval_node(e.root(), arguments, base, order, eps);
}

Jet eval_jet1(const Expr& e, Complex at, int order) {
  require_univariate(e, "eval_jet1");
  const Base base{at, 0.0, 0.0};
  const Jet x = Jet::variable(0, base, order);
  return eval(e, std::span<const Jet>(&x, 1));
}

Jet bar_eval(const Expr& e, Complex at_zbar, int order) { return eval_jet1(conjugate(e), at_zbar, order); }

Jet eval_jetN(const Expr& e, std::span<const Complex> at, int order) {
  if (at.size() != e.arity() || at.size() > static_cast<std::size_t>(kNumSlots)) {
    throw Error(ErrorKind::ArityMismatch, "evaluation point has " + std::to_string(at.size()) +
                                              " coordinates for " + std::to_string(e.arity()) +
                                              " declared variables");
  }
  Base base{};
  std::copy(at.begin(), at.end(), base.begin());
  std::vector<Jet> vars;
  for (std::size_t k = 0; k < at.size(); ++k) vars.push_back(Jet::variable(static_cast<int>(k), base, order));
  return eval(e, vars);
}

std::vector<Complex> derivatives(const Expr& e, Complex at, int n) {
  const Jet j = eval_jet1(e, at, n);
  std::vector<Complex> out(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) out[static_cast<std::size_t>(k)] = j.coeff({k, 0, 0}) * factorial(k);
  return out;
}

Jet apply(const Expr& e, const Jet& argument, int derivative) {
  require_univariate(e, "apply");
  if (derivative == 0) return eval(e, std::span<const Jet>(&argument, 1));
  const int order = argument.order();
  const Jet series = eval_jet1(e, argument.value(), order + derivative);
  std::vector<Complex> taylor(static_cast<std::size_t>(order + 1));
  for (int k = 0; k <= order; ++k) {
    taylor[static_cast<std::size_t>(k)] =
        series.coeff({k + derivative, 0, 0}) * (factorial(k + derivative) / factorial(k));
  }
  return compose(taylor, argument);
}

}  // namespace foliation
