/*
 * Copyright (c) 2026 The mwp Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mwp/expr.hpp"

#include <cassert>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace mwp {

namespace detail {

struct Node {
  enum class Kind { Number, Variable, Symbol, Unary, Binary, Call };

  Kind kind;
  double number = 0.0;
  std::string name;
  Sym sym = Sym::Pi;
  BinOp op = BinOp::Add;
  Func func = Func::Sin;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

using NodePtr = std::shared_ptr<const Node>;

namespace {

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Number;
  n->number = v;
  return n;
}

NodePtr make_variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Variable;
  n->name = std::move(name);
  return n;
}

NodePtr make_symbol(Sym s) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Symbol;
  n->sym = s;
  return n;
}

NodePtr make_unary(NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Unary;
  n->a = std::move(a);
  return n;
}

NodePtr make_binary(BinOp op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Binary;
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_call(Func f, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Call;
  n->func = f;
  n->a = std::move(a);
  return n;
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen,
                 RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  double number = 0.0;
  std::string text;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    tok_.offset = pos_;
    tok_.text.clear();
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    const char c = src_[pos_];
    switch (c) {
      case '+': tok_.kind = Tok::Plus; ++pos_; return;
      case '-': tok_.kind = Tok::Minus; ++pos_; return;
      case '*': tok_.kind = Tok::Star; ++pos_; return;
      case '/': tok_.kind = Tok::Slash; ++pos_; return;
      case '^': tok_.kind = Tok::Caret; ++pos_; return;
      case '(': tok_.kind = Tok::LParen; ++pos_; return;
      case ')': tok_.kind = Tok::RParen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      const char* begin = src_.data() + pos_;
      const char* end = src_.data() + src_.size();
      auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc() || ptr == begin)
        throw ParseError("malformed numeric literal", pos_, {"number"});
      tok_.kind = Tok::Number;
      tok_.number = value;
      pos_ += static_cast<std::size_t>(ptr - begin);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Tok::Ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_,
                     {"number", "identifier", "operator", "(", ")"});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_;
};

// ---------------------------------------------------------------------------
// Parser: precedence climbing. ^ (40, right) > unary - (30) > * / (20)
// > + - (10).

class Parser {
public:
  explicit Parser(std::string_view src) : lex_(src) {}

  NodePtr parse() {
    NodePtr e = parse_expr(0);
    const Token& t = lex_.peek();
    if (t.kind != Tok::End)
      throw ParseError("expected operator or end of input", t.offset,
                       {"+", "-", "*", "/", "^", "end"});
    return e;
  }

private:
  static int left_binding_power(Tok k) {
    switch (k) {
      case Tok::Plus:
      case Tok::Minus: return 10;
      case Tok::Star:
      case Tok::Slash: return 20;
      case Tok::Caret: return 40;
      default: return -1;
    }
  }

  NodePtr parse_expr(int min_bp) {
    NodePtr lhs = parse_prefix();
    for (;;) {
      const Token& t = lex_.peek();
      const int lbp = left_binding_power(t.kind);
      if (lbp < min_bp || lbp < 0) break;
      Token op = lex_.take();
      // Right-associative ^ re-enters at its own level; the rest one above.
      const int rbp = (op.kind == Tok::Caret) ? lbp : lbp + 1;
      NodePtr rhs = parse_expr(rbp);
      lhs = make_binary(binop_of(op.kind), std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  static BinOp binop_of(Tok k) {
    switch (k) {
      case Tok::Plus: return BinOp::Add;
      case Tok::Minus: return BinOp::Sub;
      case Tok::Star: return BinOp::Mul;
      case Tok::Slash: return BinOp::Div;
      case Tok::Caret: return BinOp::Pow;
      default: assert(false); return BinOp::Add;
    }
  }

  NodePtr parse_prefix() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Number:
        return make_number(lex_.take().number);
      case Tok::Minus: {
        lex_.take();
        return make_unary(parse_expr(30));
      }
      case Tok::LParen: {
        lex_.take();
        NodePtr e = parse_expr(0);
        const Token& close = lex_.peek();
        if (close.kind != Tok::RParen)
          throw ParseError("expected ')'", close.offset, {")"});
        lex_.take();
        return e;
      }
      case Tok::Ident: {
        Token id = lex_.take();
        if (lex_.peek().kind == Tok::LParen) {
          Func f;
          if (id.text == "sin") f = Func::Sin;
          else if (id.text == "cos") f = Func::Cos;
          else if (id.text == "exp") f = Func::Exp;
          else if (id.text == "ln") f = Func::Ln;
          else if (id.text == "sqrt") f = Func::Sqrt;
          else
            throw ParseError("unknown function '" + id.text + "'", id.offset,
                             {"sin", "cos", "exp", "ln", "sqrt"});
          lex_.take();  // (
          NodePtr arg = parse_expr(0);
          const Token& close = lex_.peek();
          if (close.kind != Tok::RParen)
            throw ParseError("expected ')'", close.offset, {")"});
          lex_.take();
          return make_call(f, std::move(arg));
        }
        if (id.text == "sigma") return make_symbol(Sym::Sigma);
        if (id.text == "sigbar") return make_symbol(Sym::Sigbar);
        if (id.text == "pi") return make_symbol(Sym::Pi);
        return make_variable(std::move(id.text));
      }
      default:
        throw ParseError("expected an operand", t.offset,
                         {"number", "identifier", "(", "-"});
    }
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Printer

int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Binary:
      switch (n.op) {
        case BinOp::Add:
        case BinOp::Sub: return 10;
        case BinOp::Mul:
        case BinOp::Div: return 20;
        case BinOp::Pow: return 40;
      }
      return 10;
    case Node::Kind::Unary: return 30;
    default: return 100;
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& child, int parent_prec, bool needs_paren_on_tie,
                 std::string& out) {
  const int cp = precedence(child);
  const bool paren = cp < parent_prec || (cp == parent_prec && needs_paren_on_tie);
  if (paren) out += '(';
  print_node(child, out);
  if (paren) out += ')';
}

const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Ln: return "ln";
    case Func::Sqrt: return "sqrt";
  }
  return "?";
}

void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case Node::Kind::Number:
      out += format_number(n.number);
      return;
    case Node::Kind::Variable:
      out += n.name;
      return;
    case Node::Kind::Symbol:
      out += (n.sym == Sym::Sigma) ? "sigma"
             : (n.sym == Sym::Sigbar) ? "sigbar" : "pi";
      return;
    case Node::Kind::Unary:
      out += '-';
      // Parenthesize nested unary so "--u" never appears.
      print_child(*n.a, 30, /*tie*/ true, out);
      return;
    case Node::Kind::Call:
      out += func_name(n.func);
      out += '(';
      print_node(*n.a, out);
      out += ')';
      return;
    case Node::Kind::Binary: {
      const int p = precedence(n);
      switch (n.op) {
        case BinOp::Add:
          // Left-associative: a tie on the right is a different tree.
          print_child(*n.a, p, false, out);
          out += " + ";
          print_child(*n.b, p, true, out);
          return;
        case BinOp::Sub:
          print_child(*n.a, p, false, out);
          out += " - ";
          print_child(*n.b, p, true, out);
          return;
        case BinOp::Mul:
          print_child(*n.a, p, false, out);
          out += "*";
          print_child(*n.b, p, true, out);
          return;
        case BinOp::Div:
          print_child(*n.a, p, false, out);
          out += "/";
          print_child(*n.b, p, true, out);
          return;
        case BinOp::Pow:
          print_child(*n.a, p, true, out);
          out += "^";
          print_child(*n.b, p, false, out);
          return;
      }
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Evaluation

struct FuncDerivs {
  double f;
  double d1;
  double d2;
};

// Value and first two derivatives, with hard domain errors: verification
// must never compare NaNs, so ln/sqrt outside (0, inf) abort the evaluation.
FuncDerivs func_derivs(Func fn, double x, const Node& where) {
  switch (fn) {
    case Func::Sin: return {std::sin(x), std::cos(x), -std::sin(x)};
    case Func::Cos: return {std::cos(x), -std::sin(x), -std::cos(x)};
    case Func::Exp: {
      const double e = std::exp(x);
      return {e, e, e};
    }
    case Func::Ln: {
      if (!(x > 0.0)) {
        std::string s;
        print_node(where, s);
        throw EvalError("ln of non-positive value " + format_number(x), s);
      }
      return {std::log(x), 1.0 / x, -1.0 / (x * x)};
    }
    case Func::Sqrt: {
      if (!(x > 0.0)) {
        std::string s;
        print_node(where, s);
        throw EvalError("sqrt of non-positive value " + format_number(x), s);
      }
      const double r = std::sqrt(x);
      return {r, 0.5 / r, -0.25 / (r * x)};
    }
  }
  return {0.0, 0.0, 0.0};
}

std::string printed(const Node& n) {
  std::string s;
  print_node(n, s);
  return s;
}

double symbol_value(Sym s, const EvalEnv& env, const Node& where) {
  switch (s) {
    case Sym::Pi: return 3.14159265358979323846;
    case Sym::Sigma:
    case Sym::Sigbar:
      if (env.params == nullptr)
        throw EvalError("reserved constant requires metallic parameters",
                        printed(where));
      return s == Sym::Sigma ? env.params->sigma : env.params->sigbar;
  }
  return 0.0;
}

double lookup(const EvalEnv& env, const std::string& name, const Node& where) {
  for (std::size_t i = 0; i < env.names.size(); ++i)
    if (env.names[i] == name) return env.values[i];
  throw EvalError("unbound variable '" + name + "'", printed(where));
}

bool node_is_constant(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Number:
    case Node::Kind::Symbol: return true;
    case Node::Kind::Variable: return false;
    case Node::Kind::Unary:
    case Node::Kind::Call: return node_is_constant(*n.a);
    case Node::Kind::Binary:
      return node_is_constant(*n.a) && node_is_constant(*n.b);
  }
  return false;
}

double eval_scalar(const Node& n, const EvalEnv& env);

// Returns true (and the exponent) when the exponent subtree is structurally
// constant and integral; those powers stay defined for negative bases.
bool constant_integer_exponent(const Node& exponent, const EvalEnv& env,
                               long long& out) {
  if (!node_is_constant(exponent)) return false;
  const double e = eval_scalar(exponent, env);
  const double r = std::nearbyint(e);
  if (std::abs(e - r) > 0.0 || std::abs(r) > 64.0) return false;
  out = static_cast<long long>(r);
  return true;
}

double eval_scalar(const Node& n, const EvalEnv& env) {
  switch (n.kind) {
    case Node::Kind::Number: return n.number;
    case Node::Kind::Variable: return lookup(env, n.name, n);
    case Node::Kind::Symbol: return symbol_value(n.sym, env, n);
    case Node::Kind::Unary: return -eval_scalar(*n.a, env);
    case Node::Kind::Call:
      return func_derivs(n.func, eval_scalar(*n.a, env), n).f;
    case Node::Kind::Binary: {
      const double a = eval_scalar(*n.a, env);
      switch (n.op) {
        case BinOp::Add: return a + eval_scalar(*n.b, env);
        case BinOp::Sub: return a - eval_scalar(*n.b, env);
        case BinOp::Mul: return a * eval_scalar(*n.b, env);
        case BinOp::Div: {
          const double b = eval_scalar(*n.b, env);
          if (b == 0.0) throw EvalError("division by zero", printed(n));
          return a / b;
        }
        case BinOp::Pow: {
          long long e = 0;
          if (constant_integer_exponent(*n.b, env, e)) {
            if (e < 0 && a == 0.0)
              throw EvalError("zero raised to a negative power", printed(n));
            return std::pow(a, static_cast<double>(e));
          }
          const double b = eval_scalar(*n.b, env);
          if (!(a > 0.0))
            throw EvalError("power with non-positive base " + format_number(a),
                            printed(n));
          return std::pow(a, b);
        }
      }
      return 0.0;
    }
  }
  return 0.0;
}

Jet2 eval_jet(const Node& n, const EvalEnv& env) {
  const Eigen::Index nvars = static_cast<Eigen::Index>(env.names.size());
  switch (n.kind) {
    case Node::Kind::Number: return Jet2::constant(n.number, nvars);
    case Node::Kind::Symbol:
      return Jet2::constant(symbol_value(n.sym, env, n), nvars);
    case Node::Kind::Variable: {
      for (std::size_t i = 0; i < env.names.size(); ++i)
        if (env.names[i] == n.name)
          return Jet2::variable(env.values[i],
                                static_cast<Eigen::Index>(i), nvars);
      throw EvalError("unbound variable '" + n.name + "'", printed(n));
    }
    case Node::Kind::Unary: return -eval_jet(*n.a, env);
    case Node::Kind::Call: {
      Jet2 a = eval_jet(*n.a, env);
      const FuncDerivs d = func_derivs(n.func, a.value(), n);
      return a.chain(d.f, d.d1, d.d2);
    }
    case Node::Kind::Binary: {
      Jet2 a = eval_jet(*n.a, env);
      switch (n.op) {
        case BinOp::Add: return a + eval_jet(*n.b, env);
        case BinOp::Sub: return a - eval_jet(*n.b, env);
        case BinOp::Mul: return a * eval_jet(*n.b, env);
        case BinOp::Div: {
          Jet2 b = eval_jet(*n.b, env);
          if (b.value() == 0.0)
            throw EvalError("division by zero", printed(n));
          return a / b;
        }
        case BinOp::Pow: {
          long long e = 0;
          if (constant_integer_exponent(*n.b, env, e)) {
            if (e < 0 && a.value() == 0.0)
              throw EvalError("zero raised to a negative power", printed(n));
            return a.ipow(e);
          }
          if (node_is_constant(*n.b)) {
            const double c = eval_scalar(*n.b, env);
            if (!(a.value() > 0.0))
              throw EvalError(
                  "power with non-positive base " + format_number(a.value()),
                  printed(n));
            const double v = std::pow(a.value(), c);
            return a.chain(v, c * std::pow(a.value(), c - 1.0),
                           c * (c - 1.0) * std::pow(a.value(), c - 2.0));
          }
          Jet2 b = eval_jet(*n.b, env);
          if (!(a.value() > 0.0))
            throw EvalError(
                "power with non-positive base " + format_number(a.value()),
                printed(n));
          const FuncDerivs ln = func_derivs(Func::Ln, a.value(), n);
          const Jet2 log_a = a.chain(ln.f, ln.d1, ln.d2);
          Jet2 prod = b * log_a;
          const double ev = std::exp(prod.value());
          return prod.chain(ev, ev, ev);
        }
      }
      return Jet2::constant(0.0, nvars);
    }
  }
  return Jet2::constant(0.0, nvars);
}

void collect_vars(const Node& n, std::set<std::string>& out) {
  switch (n.kind) {
    case Node::Kind::Variable: out.insert(n.name); return;
    case Node::Kind::Number:
    case Node::Kind::Symbol: return;
    case Node::Kind::Unary:
    case Node::Kind::Call: collect_vars(*n.a, out); return;
    case Node::Kind::Binary:
      collect_vars(*n.a, out);
      collect_vars(*n.b, out);
      return;
  }
}

bool nodes_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Node::Kind::Number: return a.number == b.number;
    case Node::Kind::Variable: return a.name == b.name;
    case Node::Kind::Symbol: return a.sym == b.sym;
    case Node::Kind::Unary: return nodes_equal(*a.a, *b.a);
    case Node::Kind::Call:
      return a.func == b.func && nodes_equal(*a.a, *b.a);
    case Node::Kind::Binary:
      return a.op == b.op && nodes_equal(*a.a, *b.a) && nodes_equal(*a.b, *b.b);
  }
  return false;
}

NodePtr substitute_node(const NodePtr& n, const std::string& var,
                        const NodePtr& replacement) {
  switch (n->kind) {
    case Node::Kind::Variable:
      return n->name == var ? replacement : n;
    case Node::Kind::Number:
    case Node::Kind::Symbol:
      return n;
    case Node::Kind::Unary:
      return make_unary(substitute_node(n->a, var, replacement));
    case Node::Kind::Call:
      return make_call(n->func, substitute_node(n->a, var, replacement));
    case Node::Kind::Binary:
      return make_binary(n->op, substitute_node(n->a, var, replacement),
                         substitute_node(n->b, var, replacement));
  }
  return n;
}

}  // namespace
}  // namespace detail

using detail::Node;

Expression::Expression() : node_(detail::make_number(0.0)) {}

Expression::Expression(std::shared_ptr<const Node> node)
    : node_(std::move(node)) {}

Expression Expression::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty expression", 0, {"expression"});
  detail::Parser p(text);
  return Expression(p.parse());
}

Expression Expression::number(double v) {
  if (v < 0.0) return unary_minus(number(-v));
  if (v == 0.0) v = 0.0;  // normalize -0.0
  return Expression(detail::make_number(v));
}

Expression Expression::variable(std::string name) {
  return Expression(detail::make_variable(std::move(name)));
}

Expression Expression::symbol(Sym s) {
  return Expression(detail::make_symbol(s));
}

Expression Expression::unary_minus(Expression e) {
  return Expression(detail::make_unary(std::move(e.node_)));
}

Expression Expression::binary(BinOp op, Expression a, Expression b) {
  return Expression(
      detail::make_binary(op, std::move(a.node_), std::move(b.node_)));
}

Expression Expression::call(Func f, Expression arg) {
  return Expression(detail::make_call(f, std::move(arg.node_)));
}

std::string Expression::str() const {
  std::string out;
  detail::print_node(*node_, out);
  return out;
}

std::set<std::string> Expression::free_vars() const {
  std::set<std::string> out;
  detail::collect_vars(*node_, out);
  return out;
}

bool Expression::is_constant() const {
  return detail::node_is_constant(*node_);
}

bool Expression::equals(const Expression& other) const {
  return detail::nodes_equal(*node_, *other.node_);
}

Expression Expression::substitute(const std::string& var,
                                  const Expression& replacement) const {
  return Expression(detail::substitute_node(node_, var, replacement.node_));
}

double Expression::eval(const EvalEnv& env) const {
  return detail::eval_scalar(*node_, env);
}

Jet2 Expression::eval_jet2(const EvalEnv& env) const {
  return detail::eval_jet(*node_, env);
}

namespace {

struct MapEnv {
  std::vector<std::string> names;
  std::vector<double> values;
};

MapEnv flatten(const std::map<std::string, double>& env) {
  MapEnv m;
  m.names.reserve(env.size());
  m.values.reserve(env.size());
  for (const auto& [k, v] : env) {
    m.names.push_back(k);
    m.values.push_back(v);
  }
  return m;
}

}  // namespace

double Expression::eval(const std::map<std::string, double>& env,
                        const MetallicParams* params) const {
  MapEnv m = flatten(env);
  return eval(EvalEnv(m.names, m.values, params));
}

Jet2 Expression::eval_jet2(const std::map<std::string, double>& env,
                           const MetallicParams* params) const {
  MapEnv m = flatten(env);
  return eval_jet2(EvalEnv(m.names, m.values, params));
}

}  // namespace mwp
