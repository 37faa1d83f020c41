#pragma once

// One-variable symbolic expressions: parsing, printing, differentiation
// and fast evaluation.  The node set is closed under differentiation.

#include <memory>
#include <string>
#include <vector>

#include "lks/errors.hpp"

namespace lks {

enum class NodeKind {
  Constant,   // real literal
  Pi,         // the constant pi
  Var,        // the variable x
  Neg,        // -a
  Sin,        // sin(a)
  Cos,        // cos(a)
  Exp,        // exp(a)
  Add,        // a + b
  Sub,        // a - b
  Mul,        // a * b
  Div,        // a / b
  IPow,       // a ^ n, integer n >= 0
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind;
  double value = 0.0;  // Constant
  int exponent = 0;    // IPow
  Expr a, b;           // operands (a for unary, a/b for binary)
};

// Construction helpers (constant folding / identity elimination applied).
Expr make_const(double v);
Expr make_pi();
Expr make_var();
Expr make_neg(Expr a);
Expr make_sin(Expr a);
Expr make_cos(Expr a);
Expr make_exp(Expr a);
Expr make_add(Expr a, Expr b);
Expr make_sub(Expr a, Expr b);
Expr make_mul(Expr a, Expr b);
Expr make_div(Expr a, Expr b);
Expr make_ipow(Expr a, int n);

// Grammar:
//   expr   := ('-')? term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' INT)?
//   base   := NUMBER | 'pi' | 'x' | '(' expr ')' | FUNC '(' expr ')'
//   FUNC   := 'sin' | 'cos' | 'exp'
// Whitespace is insignificant.  Throws ParseError with 1-based offset.
Expr parse(const std::string& text);

// Parses an expression without occurrences of x and evaluates it.
double parse_real(const std::string& text);

// Round-trip stable printer (print . parse . print == print).
std::string to_string(const Expr& e);

// Symbolic derivative; the result is again an Expr.
Expr differentiate(const Expr& e);

// Tree evaluation.  Throws EvalError on division by zero / overflow.
double eval(const Expr& e, double x);

// Substitutes x -> a*x + b and simplifies.
Expr substitute_affine(const Expr& e, double a, double b);

// Flat postfix tape for fast repeated evaluation (no allocation per call).
class CompiledExpr {
 public:
  CompiledExpr() = default;
  explicit CompiledExpr(const Expr& e);
  double operator()(double x) const;
  bool valid() const { return !ops_.empty(); }

 private:
  struct Op {
    NodeKind kind;
    double value;
    int exponent;
  };
  std::vector<Op> ops_;
  mutable std::vector<double> stack_;
};

bool contains_var(const Expr& e);

}  // namespace lks
