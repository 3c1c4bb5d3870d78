#include "tangentrep/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "tangentrep/errors.hpp"

namespace tangentrep {

namespace {

NodePtr make_constant(double c) { return std::make_shared<const ExprNode>(ExprNode{Op::constant, c, 0, nullptr, nullptr}); }
NodePtr make_variable(int index) { return std::make_shared<const ExprNode>(ExprNode{Op::variable, 0.0, index, nullptr, nullptr}); }
NodePtr make_unary(Op op, NodePtr a) { return std::make_shared<const ExprNode>(ExprNode{op, 0.0, 0, std::move(a), nullptr}); }
NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
  return std::make_shared<const ExprNode>(ExprNode{op, 0.0, 0, std::move(a), std::move(b)});
}
NodePtr make_pow(NodePtr a, int n) { return std::make_shared<const ExprNode>(ExprNode{Op::pow_int, 0.0, n, std::move(a), nullptr}); }

bool has_variables(const ExprNode& n) {
  if (n.op == Op::variable) return true;
  if (n.lhs && has_variables(*n.lhs)) return true;
  return n.rhs && has_variables(*n.rhs);
}

// ---------------------------------------------------------------------------
// Evaluation, shared by the plain and dual passes.

inline double value_of(double v) { return v; }
inline double value_of(const Dual& v) { return v.v; }

inline double apply_pow(double a, int n) { return std::pow(a, n); }
inline Dual apply_pow(const Dual& a, int n) {
  if (n == 0) return {1.0, 0.0};
  return {std::pow(a.v, n), n * std::pow(a.v, n - 1) * a.d};
}

inline double apply_sin(double a) { return std::sin(a); }
inline Dual apply_sin(const Dual& a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline double apply_cos(double a) { return std::cos(a); }
inline Dual apply_cos(const Dual& a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline double apply_exp(double a) { return std::exp(a); }
inline Dual apply_exp(const Dual& a) {
  const double e = std::exp(a.v);
  return {e, e * a.d};
}
inline double apply_log(double a) { return std::log(a); }
inline Dual apply_log(const Dual& a) { return {std::log(a.v), a.d / a.v}; }
inline double apply_sqrt(double a) { return std::sqrt(a); }
inline Dual apply_sqrt(const Dual& a) {
  const double s = std::sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}

template <class T>
T lift(double c) {
  if constexpr (std::is_same_v<T, double>) return c;
  else return T{c, 0.0};
}

template <class T>
T eval_node(const ExprNode& n, std::span<const T> x) {
  switch (n.op) {
    case Op::constant: return lift<T>(n.constant);
    case Op::variable: return x[n.index];
    case Op::negate: return -eval_node(*n.lhs, x);
    case Op::add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case Op::sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case Op::mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case Op::div: {
      const T a = eval_node(*n.lhs, x);
      const T b = eval_node(*n.rhs, x);
      if (value_of(b) == 0.0) throw DomainError("division by zero");
      return a / b;
    }
    case Op::pow_int: {
      const T a = eval_node(*n.lhs, x);
      if (n.index < 0 && value_of(a) == 0.0) throw DomainError("negative power of zero");
      return apply_pow(a, n.index);
    }
    case Op::sin: return apply_sin(eval_node(*n.lhs, x));
    case Op::cos: return apply_cos(eval_node(*n.lhs, x));
    case Op::exp: return apply_exp(eval_node(*n.lhs, x));
    case Op::log: {
      const T a = eval_node(*n.lhs, x);
      if (!(value_of(a) > 0.0)) throw DomainError("log of non-positive argument");
      return apply_log(a);
    }
    case Op::sqrt: {
      const T a = eval_node(*n.lhs, x);
      if (!(value_of(a) >= 0.0)) throw DomainError("sqrt of negative argument");
      if constexpr (std::is_same_v<T, Dual>) {
        if (a.v == 0.0) throw DomainError("sqrt is not differentiable at zero");
      }
      return apply_sqrt(a);
    }
  }
  throw Error("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Printing.

std::string format_number(double c) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", c);
  return buf;
}

const char* func_name(Op op) {
  switch (op) {
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::exp: return "exp";
    case Op::log: return "log";
    case Op::sqrt: return "sqrt";
    default: return nullptr;
  }
}

const char* binary_symbol(Op op) {
  switch (op) {
    case Op::add: return " + ";
    case Op::sub: return " - ";
    case Op::mul: return " * ";
    case Op::div: return " / ";
    default: return nullptr;
  }
}

const char* tree_name(Op op) {
  switch (op) {
    case Op::add: return "add";
    case Op::sub: return "sub";
    case Op::mul: return "mul";
    case Op::div: return "div";
    case Op::negate: return "neg";
    case Op::pow_int: return "pow";
    default: return func_name(op);
  }
}

void print_infix(const ExprNode& n, std::string& out) {
  switch (n.op) {
    case Op::constant: {
      const std::string s = format_number(n.constant);
      if (n.constant < 0 || std::signbit(n.constant)) out += "(" + s + ")";
      else out += s;
      return;
    }
    case Op::variable: out += "x" + std::to_string(n.index + 1); return;
    case Op::negate:
      out += "(-";
      print_infix(*n.lhs, out);
      out += ")";
      return;
    case Op::pow_int:
      out += "(";
      print_infix(*n.lhs, out);
      out += "^" + std::to_string(n.index) + ")";
      return;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div:
      out += "(";
      print_infix(*n.lhs, out);
      out += binary_symbol(n.op);
      print_infix(*n.rhs, out);
      out += ")";
      return;
    default:
      out += func_name(n.op);
      out += "(";
      print_infix(*n.lhs, out);
      out += ")";
      return;
  }
}

void print_tree(const ExprNode& n, std::string& out) {
  switch (n.op) {
    case Op::constant: out += format_number(n.constant); return;
    case Op::variable: out += "var" + std::to_string(n.index + 1); return;
    case Op::pow_int:
      out += "pow(";
      print_tree(*n.lhs, out);
      out += "," + std::to_string(n.index) + ")";
      return;
    default:
      out += tree_name(n.op);
      out += "(";
      print_tree(*n.lhs, out);
      if (n.rhs) {
        out += ",";
        print_tree(*n.rhs, out);
      }
      out += ")";
      return;
  }
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.

class Parser {
 public:
  Parser(std::string_view text, int dim) : text_(text), dim_(dim) {}

  NodePtr parse_all() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(ParseError::Kind::syntax, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(ParseError::Kind kind, const std::string& detail) const { throw ParseError(kind, pos_, detail); }
  [[noreturn]] void fail_at(ParseError::Kind kind, std::size_t pos, const std::string& detail) const {
    throw ParseError(kind, pos, detail);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(ParseError::Kind::syntax, std::string("expected '") + c + "' before end of input");
      fail(ParseError::Kind::syntax, std::string("expected '") + c + "'");
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      if (accept('+')) lhs = make_binary(Op::add, lhs, term());
      else if (accept('-')) lhs = make_binary(Op::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      if (accept('*')) lhs = make_binary(Op::mul, lhs, factor());
      else if (accept('/')) lhs = make_binary(Op::div, lhs, factor());
      else return lhs;
    }
  }

  NodePtr factor() {
    NodePtr b = base();
    skip_ws();
    const std::size_t caret = pos_;
    if (!accept('^')) return b;
    const std::size_t exp_pos = pos_;
    NodePtr e = base();
    if (has_variables(*e)) fail_at(ParseError::Kind::syntax, exp_pos, "exponent must be a constant");
    const double c = eval_node<double>(*e, std::span<const double>{});
    if (!std::isfinite(c)) fail_at(ParseError::Kind::syntax, caret, "exponent is not finite");
    if (c == std::trunc(c) && std::abs(c) <= 1024) return make_pow(b, static_cast<int>(c));
    // a^c == exp(c * log(a)) for a > 0
    return make_unary(Op::exp, make_binary(Op::mul, make_constant(c), make_unary(Op::log, b)));
  }

  NodePtr base() {
    skip_ws();
    if (pos_ >= text_.size()) fail(ParseError::Kind::syntax, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (c == '-') {
      ++pos_;
      NodePtr inner = base();
      if (inner->op == Op::constant) return make_constant(-inner->constant);
      return make_unary(Op::negate, inner);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(ParseError::Kind::syntax, "unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) fail_at(ParseError::Kind::syntax, start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail_at(ParseError::Kind::syntax, mark, "malformed exponent");
    }
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_ || !std::isfinite(v)) {
      fail_at(ParseError::Kind::syntax, start, "number out of range");
    }
    return make_constant(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if (name.size() > 1 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string_view::npos) {
      int index = 0;
      const auto res = std::from_chars(name.data() + 1, name.data() + name.size(), index);
      if (res.ec != std::errc() || index < 1 || index > dim_) {
        fail_at(ParseError::Kind::variable_out_of_range, start,
                std::string(name) + " with dim " + std::to_string(dim_));
      }
      return make_variable(index - 1);
    }

    static constexpr std::pair<std::string_view, Op> kFuncs[] = {
        {"sin", Op::sin}, {"cos", Op::cos}, {"exp", Op::exp}, {"log", Op::log}, {"sqrt", Op::sqrt}};
    for (const auto& [fname, op] : kFuncs) {
      if (name == fname) {
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return make_unary(op, arg);
      }
    }

    static constexpr std::string_view kNonSmooth[] = {"abs",  "fabs", "min",   "max", "floor", "ceil",
                                                      "round", "sign", "sgn", "trunc", "mod", "step"};
    for (auto bad : kNonSmooth) {
      if (name == bad) fail_at(ParseError::Kind::non_smooth_primitive, start, std::string(name));
    }
    fail_at(ParseError::Kind::unknown_identifier, start, std::string(name));
  }

  std::string_view text_;
  int dim_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldExpr::FieldExpr(NodePtr root, int dim) : root_(std::move(root)), dim_(dim) {
  if (!root_) throw Error("empty expression");
  if (dim_ < 1) throw Error("expression dimension must be positive");
}

double FieldExpr::eval(std::span<const double> x) const {
  require_dim(static_cast<std::size_t>(dim_), x.size());
  return eval_node<double>(*root_, x);
}

Dual FieldExpr::eval_dual(std::span<const double> x, int coord) const {
  require_dim(static_cast<std::size_t>(dim_), x.size());
  Dual buf[3];
  std::vector<Dual> heap;
  Dual* d = buf;
  if (dim_ > 3) {
    heap.resize(dim_);
    d = heap.data();
  }
  for (int i = 0; i < dim_; ++i) d[i] = Dual{x[i], i == coord ? 1.0 : 0.0};
  return eval_node<Dual>(*root_, std::span<const Dual>(d, dim_));
}

std::string FieldExpr::to_string() const {
  std::string out;
  print_infix(*root_, out);
  return out;
}

std::string FieldExpr::to_tree_string() const {
  std::string out;
  print_tree(*root_, out);
  return out;
}

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::constant: return a.constant == b.constant && std::signbit(a.constant) == std::signbit(b.constant);
    case Op::variable: return a.index == b.index;
    case Op::pow_int: return a.index == b.index && structurally_equal(*a.lhs, *b.lhs);
    default:
      if (!structurally_equal(*a.lhs, *b.lhs)) return false;
      if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
      return !a.rhs || structurally_equal(*a.rhs, *b.rhs);
  }
}

bool operator==(const FieldExpr& a, const FieldExpr& b) {
  return a.dim_ == b.dim_ && structurally_equal(*a.root_, *b.root_);
}

FieldExpr parse(std::string_view text, int dim) {
  if (dim < 1) throw Error("expression dimension must be positive");
  Parser p(text, dim);
  return FieldExpr(p.parse_all(), dim);
}

}  // namespace tangentrep
