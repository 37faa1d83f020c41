#include "lks/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace lks {

namespace {

std::shared_ptr<ExprNode> node(NodeKind k) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  return n;
}

bool is_const(const Expr& e, double v) {
  return e->kind == NodeKind::Constant && e->value == v;
}

}  // namespace

Expr make_const(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Constant;
  n->value = v;
  return n;
}

Expr make_pi() { return node(NodeKind::Pi); }
Expr make_var() { return node(NodeKind::Var); }

Expr make_neg(Expr a) {
  if (a->kind == NodeKind::Constant) return make_const(-a->value);
  if (a->kind == NodeKind::Neg) return a->a;
  auto n = node(NodeKind::Neg);
  n->a = std::move(a);
  return n;
}

static Expr unary(NodeKind k, Expr a) {
  auto n = node(k);
  n->a = std::move(a);
  return n;
}

Expr make_sin(Expr a) { return unary(NodeKind::Sin, std::move(a)); }
Expr make_cos(Expr a) { return unary(NodeKind::Cos, std::move(a)); }
Expr make_exp(Expr a) { return unary(NodeKind::Exp, std::move(a)); }

Expr make_add(Expr a, Expr b) {
  if (a->kind == NodeKind::Constant && b->kind == NodeKind::Constant)
    return make_const(a->value + b->value);
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  auto n = node(NodeKind::Add);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Expr make_sub(Expr a, Expr b) {
  if (a->kind == NodeKind::Constant && b->kind == NodeKind::Constant)
    return make_const(a->value - b->value);
  if (is_const(b, 0)) return a;
  if (is_const(a, 0)) return make_neg(std::move(b));
  auto n = node(NodeKind::Sub);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Expr make_mul(Expr a, Expr b) {
  if (a->kind == NodeKind::Constant && b->kind == NodeKind::Constant)
    return make_const(a->value * b->value);
  if (is_const(a, 0) || is_const(b, 0)) return make_const(0);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  if (is_const(a, -1)) return make_neg(std::move(b));
  if (is_const(b, -1)) return make_neg(std::move(a));
  // keep numeric coefficients on the left
  if (b->kind == NodeKind::Constant && a->kind != NodeKind::Constant)
    std::swap(a, b);
  auto n = node(NodeKind::Mul);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Expr make_div(Expr a, Expr b) {
  if (is_const(a, 0) && !is_const(b, 0)) return make_const(0);
  if (is_const(b, 1)) return a;
  if (a->kind == NodeKind::Constant && b->kind == NodeKind::Constant &&
      b->value != 0)
    return make_const(a->value / b->value);
  auto n = node(NodeKind::Div);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Expr make_ipow(Expr a, int n) {
  if (n == 0) return make_const(1);
  if (n == 1) return a;
  if (a->kind == NodeKind::Constant) return make_const(std::pow(a->value, n));
  auto e = node(NodeKind::IPow);
  e->a = std::move(a);
  e->exponent = n;
  return e;
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over the grammar in the header.

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text), pos_(0) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Expr expr() {
    bool neg = eat('-');
    Expr e = term();
    if (neg) e = make_neg(e);
    for (;;) {
      if (eat('+'))
        e = make_add(e, term());
      else if (eat('-'))
        e = make_sub(e, term());
      else
        break;
    }
    return e;
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (eat('*'))
        e = make_mul(e, factor());
      else if (eat('/'))
        e = make_div(e, factor());
      else
        break;
    }
    return e;
  }

  Expr factor() {
    Expr e = base();
    if (eat('^')) {
      skip_ws();
      bool neg = eat('-');
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      if (pos_ == start) fail("expected integer exponent");
      int n = std::atoi(s_.substr(start, pos_ - start).c_str());
      if (neg) {
        // a^-n is not in the node set; expressible as 1/a^n
        e = make_div(make_const(1), make_ipow(e, n));
      } else {
        e = make_ipow(e, n);
      }
    }
    return e;
  }

  Expr base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             std::isalnum(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == "x") return make_var();
      if (id == "pi") return make_pi();
      if (id == "sin" || id == "cos" || id == "exp") {
        if (!eat('(')) fail("expected '(' after function name");
        Expr arg = expr();
        if (!eat(')')) fail("expected ')'");
        if (id == "sin") return make_sin(arg);
        if (id == "cos") return make_cos(arg);
        return make_exp(arg);
      }
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() &&
               std::isdigit(static_cast<unsigned char>(s_[pos_])))
          ++pos_;
      } else {
        pos_ = mark;  // 'e' belonged to something else
      }
    }
    if (pos_ == start) fail("expected number");
    return make_const(std::strtod(s_.substr(start, pos_ - start).c_str(), nullptr));
  }

  const std::string& s_;
  std::size_t pos_;
};

}  // namespace

Expr parse(const std::string& text) { return Parser(text).run(); }

double parse_real(const std::string& text) {
  Expr e = parse(text);
  if (contains_var(e)) throw ParseError("expected a constant expression", 1);
  return eval(e, 0.0);
}

// ---------------------------------------------------------------------------
// Printer.  Parenthesizes by precedence so output re-parses identically.

namespace {

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Neg:
      return 1;
    case NodeKind::Mul:
    case NodeKind::Div:
      return 2;
    case NodeKind::IPow:
      return 3;
    default:
      return 4;
  }
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_rec(const Expr& e, int parent_prec, std::string& out) {
  int prec = precedence(e->kind);
  bool paren = prec < parent_prec;
  if (paren) out += '(';
  switch (e->kind) {
    case NodeKind::Constant: {
      if (e->value < 0) {
        // negative literals print as a negation to stay inside the grammar
        out += "(0 - ";
        out += fmt_double(-e->value);
        out += ')';
      } else {
        out += fmt_double(e->value);
      }
      break;
    }
    case NodeKind::Pi:
      out += "pi";
      break;
    case NodeKind::Var:
      out += 'x';
      break;
    case NodeKind::Neg:
      out += '-';
      print_rec(e->a, 2, out);
      break;
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Exp:
      out += e->kind == NodeKind::Sin ? "sin" : e->kind == NodeKind::Cos ? "cos" : "exp";
      out += '(';
      print_rec(e->a, 0, out);
      out += ')';
      break;
    case NodeKind::Add:
      print_rec(e->a, 1, out);
      out += " + ";
      print_rec(e->b, 2, out);
      break;
    case NodeKind::Sub:
      print_rec(e->a, 1, out);
      out += " - ";
      print_rec(e->b, 2, out);
      break;
    case NodeKind::Mul:
      print_rec(e->a, 2, out);
      out += "*";
      print_rec(e->b, 3, out);
      break;
    case NodeKind::Div:
      print_rec(e->a, 2, out);
      out += "/";
      print_rec(e->b, 3, out);
      break;
    case NodeKind::IPow:
      print_rec(e->a, 4, out);
      out += '^';
      out += std::to_string(e->exponent);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print_rec(e, 0, out);
  return out;
}

// ---------------------------------------------------------------------------

Expr differentiate(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Constant:
    case NodeKind::Pi:
      return make_const(0);
    case NodeKind::Var:
      return make_const(1);
    case NodeKind::Neg:
      return make_neg(differentiate(e->a));
    case NodeKind::Sin:
      return make_mul(make_cos(e->a), differentiate(e->a));
    case NodeKind::Cos:
      return make_neg(make_mul(make_sin(e->a), differentiate(e->a)));
    case NodeKind::Exp:
      return make_mul(make_exp(e->a), differentiate(e->a));
    case NodeKind::Add:
      return make_add(differentiate(e->a), differentiate(e->b));
    case NodeKind::Sub:
      return make_sub(differentiate(e->a), differentiate(e->b));
    case NodeKind::Mul:
      return make_add(make_mul(differentiate(e->a), e->b),
                      make_mul(e->a, differentiate(e->b)));
    case NodeKind::Div:
      return make_div(make_sub(make_mul(differentiate(e->a), e->b),
                               make_mul(e->a, differentiate(e->b))),
                      make_ipow(e->b, 2));
    case NodeKind::IPow:
      return make_mul(make_mul(make_const(e->exponent),
                               make_ipow(e->a, e->exponent - 1)),
                      differentiate(e->a));
  }
  throw std::logic_error("unreachable");
}

double eval(const Expr& e, double x) {
  switch (e->kind) {
    case NodeKind::Constant:
      return e->value;
    case NodeKind::Pi:
      return M_PI;
    case NodeKind::Var:
      return x;
    case NodeKind::Neg:
      return -eval(e->a, x);
    case NodeKind::Sin:
      return std::sin(eval(e->a, x));
    case NodeKind::Cos:
      return std::cos(eval(e->a, x));
    case NodeKind::Exp:
      return std::exp(eval(e->a, x));
    case NodeKind::Add:
      return eval(e->a, x) + eval(e->b, x);
    case NodeKind::Sub:
      return eval(e->a, x) - eval(e->b, x);
    case NodeKind::Mul:
      return eval(e->a, x) * eval(e->b, x);
    case NodeKind::Div: {
      double d = eval(e->b, x);
      if (d == 0.0) throw EvalError("division by zero at x=" + std::to_string(x));
      return eval(e->a, x) / d;
    }
    case NodeKind::IPow: {
      double base = eval(e->a, x);
      double r = 1.0;
      for (int i = 0; i < e->exponent; ++i) r *= base;
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

Expr substitute_affine(const Expr& e, double a, double b) {
  switch (e->kind) {
    case NodeKind::Constant:
    case NodeKind::Pi:
      return e;
    case NodeKind::Var:
      return make_add(make_mul(make_const(a), make_var()), make_const(b));
    case NodeKind::Neg:
      return make_neg(substitute_affine(e->a, a, b));
    case NodeKind::Sin:
      return make_sin(substitute_affine(e->a, a, b));
    case NodeKind::Cos:
      return make_cos(substitute_affine(e->a, a, b));
    case NodeKind::Exp:
      return make_exp(substitute_affine(e->a, a, b));
    case NodeKind::Add:
      return make_add(substitute_affine(e->a, a, b), substitute_affine(e->b, a, b));
    case NodeKind::Sub:
      return make_sub(substitute_affine(e->a, a, b), substitute_affine(e->b, a, b));
    case NodeKind::Mul:
      return make_mul(substitute_affine(e->a, a, b), substitute_affine(e->b, a, b));
    case NodeKind::Div:
      return make_div(substitute_affine(e->a, a, b), substitute_affine(e->b, a, b));
    case NodeKind::IPow:
      return make_ipow(substitute_affine(e->a, a, b), e->exponent);
  }
  throw std::logic_error("unreachable");
}

bool contains_var(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Var:
      return true;
    case NodeKind::Constant:
    case NodeKind::Pi:
      return false;
    case NodeKind::Neg:
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Exp:
    case NodeKind::IPow:
      return contains_var(e->a);
    default:
      return contains_var(e->a) || contains_var(e->b);
  }
}

// ---------------------------------------------------------------------------

CompiledExpr::CompiledExpr(const Expr& e) {
  // post-order flatten
  std::vector<const ExprNode*> work{e.get()};
  std::vector<const ExprNode*> order;
  while (!work.empty()) {
    const ExprNode* n = work.back();
    work.pop_back();
    order.push_back(n);
    if (n->a) work.push_back(n->a.get());
    if (n->b) work.push_back(n->b.get());
  }
  ops_.reserve(order.size());
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    ops_.push_back({(*it)->kind, (*it)->value, (*it)->exponent});
  std::size_t depth = 1;
  std::size_t cur = 0;
  for (const Op& op : ops_) {
    switch (op.kind) {
      case NodeKind::Constant:
      case NodeKind::Pi:
      case NodeKind::Var:
        ++cur;
        break;
      case NodeKind::Add:
      case NodeKind::Sub:
      case NodeKind::Mul:
      case NodeKind::Div:
        --cur;
        break;
      default:
        break;
    }
    depth = std::max(depth, cur);
  }
  stack_.resize(depth + 2);
}

double CompiledExpr::operator()(double x) const {
  double* sp = stack_.data();
  for (const Op& op : ops_) {
    switch (op.kind) {
      case NodeKind::Constant:
        *sp++ = op.value;
        break;
      case NodeKind::Pi:
        *sp++ = M_PI;
        break;
      case NodeKind::Var:
        *sp++ = x;
        break;
      case NodeKind::Neg:
        sp[-1] = -sp[-1];
        break;
      case NodeKind::Sin:
        sp[-1] = std::sin(sp[-1]);
        break;
      case NodeKind::Cos:
        sp[-1] = std::cos(sp[-1]);
        break;
      case NodeKind::Exp:
        sp[-1] = std::exp(sp[-1]);
        break;
      case NodeKind::Add:
        sp[-2] += sp[-1];
        --sp;
        break;
      case NodeKind::Sub:
        sp[-2] -= sp[-1];
        --sp;
        break;
      case NodeKind::Mul:
        sp[-2] *= sp[-1];
        --sp;
        break;
      case NodeKind::Div:
        if (sp[-1] == 0.0) throw EvalError("division by zero");
        sp[-2] /= sp[-1];
        --sp;
        break;
      case NodeKind::IPow: {
        double base = sp[-1];
        double r = 1.0;
        for (int i = 0; i < op.exponent; ++i) r *= base;
        sp[-1] = r;
        break;
      }
    }
  }
  return sp[-1];
}

}  // namespace lks
