#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rcf/types.hpp"

namespace rcf {

// Expression language for coefficient fields over the base manifold.
// Fields depend on z only (never on the fiber variable), so the grammar has
// no eta. Grammar:
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' ['-'] integer)?      integer exponent, |p| <= 16
//   primary := number | 'i' | variable | 'conj' '(' expr ')'
//            | 'exp' '(' expr ')' | '(' expr ')'
//   number  := decimal literal, optional 'i' suffix (e.g. 2, 1.5e-3, 2i)
//   variable:= z1 .. z9 | z_10, z_11, ...
//
// Precedence ^ > unary minus > * / > + -, left-associative. The parser
// folds unary minus and +/- of literals, so "1+2i" is a single literal.

enum class ExprOp { Literal, Var, Conj, Exp, Neg, Add, Sub, Mul, Div, Pow };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprOp op;
  Complex value{};  // Literal
  int index = 0;    // Var: 1-based coordinate; Pow: exponent
  Expr a, b;
};

Expr make_literal(Complex v);
Expr make_var(int index);
Expr make_unary(ExprOp op, Expr a);
Expr make_binary(ExprOp op, Expr a, Expr b);
Expr make_pow(Expr base, int exponent);

/// Parses source text; throws SyntaxError with line/column on any invalid
/// input (including arbitrary bytes and over-deep nesting).
Expr parse(const std::string& source);

/// Canonical text form; parse(print(e)) is structurally identical to e.
std::string print(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// Largest z-index referenced, 0 for constant expressions.
int max_var_index(const Expr& e);

/// Validates variable indices against the ambient dimension.
/// Throws IndexOutOfRange.
void bind(const Expr& e, int n);

/// Structural evaluation. conj and exp use exact complex semantics.
/// Throws DivisionNearZero when a divisor modulus < 1e-300.
Complex eval(const Expr& e, const CVector& z);

/// The coefficient fields a_ij(z), a_ij-bar(z), b_i(z) of a metric, as
/// expressions. a_sym slots are shared across the diagonal.
struct FieldTable {
  int n = 0;
  std::vector<Expr> a_sym;    // n*n row-major; [i][j] and [j][i] share nodes
  std::vector<Expr> a_mixed;  // n*n row-major
  std::vector<Expr> b;        // n

  static FieldTable zeros(int n);

  const Expr& sym(int i, int j) const { return a_sym[i * n + j]; }
  const Expr& mixed(int i, int j) const { return a_mixed[i * n + j]; }

  void set_sym(int i, int j, Expr e);  // assigns both mirror slots
  void set_mixed(int i, int j, Expr e) { a_mixed[i * n + j] = std::move(e); }
};

/// Loads { "n": int, "a_sym": [[expr]], "a_mixed": [[expr]], "b": [expr] }
/// from JSON text. Missing keys/entries default to "0". Throws
/// InvalidMetricFile / SyntaxError / IndexOutOfRange.
FieldTable field_table_from_json(const std::string& json_text);

}  // namespace rcf
