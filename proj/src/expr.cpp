#include "rcf/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "rcf/errors.hpp"

namespace rcf {

namespace {

Expr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

bool is_literal(const Expr& e) { return e->op == ExprOp::Literal; }

}  // namespace

Expr make_literal(Complex v) {
  return node({ExprOp::Literal, v, 0, nullptr, nullptr});
}

Expr make_var(int index) {
  return node({ExprOp::Var, Complex{}, index, nullptr, nullptr});
}

Expr make_unary(ExprOp op, Expr a) {
  if (op == ExprOp::Neg && is_literal(a)) return make_literal(-a->value);
  return node({op, Complex{}, 0, std::move(a), nullptr});
}

Expr make_binary(ExprOp op, Expr a, Expr b) {
  // Fold literal sums so "1+2i" stays one literal node.
  if (is_literal(a) && is_literal(b)) {
    if (op == ExprOp::Add) return make_literal(a->value + b->value);
    if (op == ExprOp::Sub) return make_literal(a->value - b->value);
  }
  return node({op, Complex{}, 0, std::move(a), std::move(b)});
}

Expr make_pow(Expr base, int exponent) {
  return node({ExprOp::Pow, Complex{}, exponent, std::move(base), nullptr});
}

// ---------------------------------------------------------------------------
// Lexing + recursive-descent parsing

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  Complex value{};     // Number
  std::string text;    // Ident
  int line = 1, column = 1;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, column = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(line, column, expected);
  }

  char peek() const { return pos < src.size() ? src[pos] : '\0'; }

  void advance() {
    if (pos >= src.size()) return;
    if (src[pos] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
        advance();
      else
        break;
    }
  }

  Token next() {
    skip_ws();
    Token t;
    t.line = line;
    t.column = column;
    if (pos >= src.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = src[pos];
    switch (c) {
      case '+': t.kind = Tok::Plus; advance(); return t;
      case '-': t.kind = Tok::Minus; advance(); return t;
      case '*': t.kind = Tok::Star; advance(); return t;
      case '/': t.kind = Tok::Slash; advance(); return t;
      case '^': t.kind = Tok::Caret; advance(); return t;
      case '(': t.kind = Tok::LParen; advance(); return t;
      case ')': t.kind = Tok::RParen; advance(); return t;
      default: break;
    }
    if ((c >= '0' && c <= '9') || c == '.') return lex_number(t);
    if (is_ident_start(c)) return lex_ident(t);
    fail("a number, identifier, operator or parenthesis");
  }

  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
  }

  Token lex_number(Token t) {
    double re = 0.0;
    const char* begin = src.data() + pos;
    const char* end = src.data() + src.size();
    auto [ptr, ec] = std::from_chars(begin, end, re);
    if (ec != std::errc() || ptr == begin) fail("a numeric literal");
    size_t consumed = static_cast<size_t>(ptr - begin);
    for (size_t k = 0; k < consumed; ++k) advance();
    t.kind = Tok::Number;
    if (peek() == 'i' && (pos + 1 >= src.size() || !is_ident_char(src[pos + 1]))) {
      advance();
      t.value = Complex(0.0, re);
    } else {
      t.value = Complex(re, 0.0);
    }
    return t;
  }

  Token lex_ident(Token t) {
    std::string s;
    while (pos < src.size() && is_ident_char(src[pos])) {
      s.push_back(src[pos]);
      advance();
    }
    if (s == "i") {
      t.kind = Tok::Number;
      t.value = Complex(0.0, 1.0);
      return t;
    }
    t.kind = Tok::Ident;
    t.text = std::move(s);
    return t;
  }
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) { bump(); }

  Expr run() {
    Expr e = expr();
    if (cur_.kind != Tok::End) fail("end of input");
    return e;
  }

 private:
  Lexer lex_;
  Token cur_;
  int depth_ = 0;
  static constexpr int kMaxDepth = 200;

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(cur_.line, cur_.column, expected);
  }

  void bump() { cur_ = lex_.next(); }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) p.fail("shallower nesting");
    }
    ~DepthGuard() { --p.depth_; }
  };

  Expr expr() {
    DepthGuard guard(*this);
    Expr lhs = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      ExprOp op = cur_.kind == Tok::Plus ? ExprOp::Add : ExprOp::Sub;
      bump();
      lhs = make_binary(op, lhs, term());
    }
    return lhs;
  }

  Expr term() {
    DepthGuard guard(*this);
    Expr lhs = factor();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      ExprOp op = cur_.kind == Tok::Star ? ExprOp::Mul : ExprOp::Div;
      bump();
      lhs = make_binary(op, lhs, factor());
    }
    return lhs;
  }

  Expr factor() {
    DepthGuard guard(*this);
    if (cur_.kind == Tok::Minus) {
      bump();
      return make_unary(ExprOp::Neg, factor());
    }
    return power();
  }

  Expr power() {
    DepthGuard guard(*this);
    Expr base = primary();
    if (cur_.kind != Tok::Caret) return base;
    bump();
    bool negate = false;
    if (cur_.kind == Tok::Minus) {
      negate = true;
      bump();
    }
    if (cur_.kind != Tok::Number || cur_.value.imag() != 0.0)
      fail("an integer exponent");
    double re = cur_.value.real();
    if (re != std::floor(re) || std::abs(re) > 16.0)
      fail("an integer exponent with |p| <= 16");
    bump();
    int p = static_cast<int>(re);
    return make_pow(base, negate ? -p : p);
  }

  Expr primary() {
    DepthGuard guard(*this);
    switch (cur_.kind) {
      case Tok::Number: {
        Complex v = cur_.value;
        bump();
        return make_literal(v);
      }
      case Tok::LParen: {
        bump();
        Expr e = expr();
        expect_rparen();
        return e;
      }
      case Tok::Ident:
        return ident_primary();
      default:
        fail("a number, variable, function or '('");
    }
  }

  void expect_rparen() {
    if (cur_.kind != Tok::RParen) fail("')'");
    bump();
  }

  Expr ident_primary() {
    std::string name = cur_.text;
    if (name == "conj" || name == "exp") {
      bump();
      if (cur_.kind != Tok::LParen) fail("'(' after " + name);
      bump();
      Expr arg = expr();
      expect_rparen();
      return make_unary(name == "conj" ? ExprOp::Conj : ExprOp::Exp, arg);
    }
    int index = parse_var_index(name);
    if (index > 0) {
      bump();
      return make_var(index);
    }
    fail("'conj', 'exp' or a variable z1..z9/z_10..");
  }

  // z1..z9 or z_<digits>; returns 0 when the name is not a variable.
  static int parse_var_index(const std::string& name) {
    if (name.size() < 2 || name[0] != 'z') return 0;
    size_t digits_at = 1;
    if (name[1] == '_') digits_at = 2;
    if (digits_at >= name.size()) return 0;
    if (digits_at == 1 && name.size() != 2) return 0;  // z10 is not valid
    long value = 0;
    for (size_t k = digits_at; k < name.size(); ++k) {
      char c = name[k];
      if (c < '0' || c > '9') return 0;
      value = value * 10 + (c - '0');
      if (value > 1'000'000) return 0;
    }
    return value >= 1 ? static_cast<int>(value) : 0;
  }
};

}  // namespace

Expr parse(const std::string& source) { return Parser(source).run(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string fmt_real(Real x) {
  if (x == 0.0) return "0";  // also normalizes -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

std::string fmt_literal(Complex v) {
  const Real re = v.real(), im = v.imag();
  if (im == 0.0) return fmt_real(re);
  if (re == 0.0) return fmt_real(im) + "i";
  std::string s = "(" + fmt_real(re);
  s += im < 0.0 ? "-" : "+";
  s += fmt_real(std::abs(im)) + "i)";
  return s;
}

}  // namespace

std::string print(const Expr& e) {
  switch (e->op) {
    case ExprOp::Literal:
      return fmt_literal(e->value);
    case ExprOp::Var:
      return e->index <= 9 ? "z" + std::to_string(e->index)
                           : "z_" + std::to_string(e->index);
    case ExprOp::Conj:
      return "conj(" + print(e->a) + ")";
    case ExprOp::Exp:
      return "exp(" + print(e->a) + ")";
    case ExprOp::Neg:
      return "(-" + print(e->a) + ")";
    case ExprOp::Add:
      return "(" + print(e->a) + "+" + print(e->b) + ")";
    case ExprOp::Sub:
      return "(" + print(e->a) + "-" + print(e->b) + ")";
    case ExprOp::Mul:
      return "(" + print(e->a) + "*" + print(e->b) + ")";
    case ExprOp::Div:
      return "(" + print(e->a) + "/" + print(e->b) + ")";
    case ExprOp::Pow:
      return "(" + print(e->a) + "^" + std::to_string(e->index) + ")";
  }
  return "";
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (!a || !b || a->op != b->op) return false;
  switch (a->op) {
    case ExprOp::Literal:
      return a->value == b->value;
    case ExprOp::Var:
      return a->index == b->index;
    case ExprOp::Pow:
      return a->index == b->index && structurally_equal(a->a, b->a);
    case ExprOp::Conj:
    case ExprOp::Exp:
    case ExprOp::Neg:
      return structurally_equal(a->a, b->a);
    default:
      return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
  }
}

int max_var_index(const Expr& e) {
  if (!e) return 0;
  int m = e->op == ExprOp::Var ? e->index : 0;
  if (e->a) m = std::max(m, max_var_index(e->a));
  if (e->b) m = std::max(m, max_var_index(e->b));
  return m;
}

void bind(const Expr& e, int n) {
  int m = max_var_index(e);
  if (m > n)
    throw Error(Errc::IndexOutOfRange,
                "expression references z" + std::to_string(m) +
                    " but the metric dimension is " + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Complex ipow(Complex base, int p) {
  if (p < 0) {
    if (std::abs(base) < 1e-300)
      throw Error(Errc::DivisionNearZero, "negative power of a near-zero base");
    return Complex(1.0) / ipow(base, -p);
  }
  Complex acc(1.0);
  Complex factor = base;
  while (p > 0) {
    if (p & 1) acc *= factor;
    p >>= 1;
    if (p) factor *= factor;
  }
  return acc;
}

}  // namespace

Complex eval(const Expr& e, const CVector& z) {
  switch (e->op) {
    case ExprOp::Literal:
      return e->value;
    case ExprOp::Var:
      if (e->index > z.size())
        throw Error(Errc::IndexOutOfRange,
                    "z" + std::to_string(e->index) + " with n = " +
                        std::to_string(z.size()));
      return z[e->index - 1];
    case ExprOp::Conj:
      return std::conj(eval(e->a, z));
    case ExprOp::Exp:
      return std::exp(eval(e->a, z));
    case ExprOp::Neg:
      return -eval(e->a, z);
    case ExprOp::Add:
      return eval(e->a, z) + eval(e->b, z);
    case ExprOp::Sub:
      return eval(e->a, z) - eval(e->b, z);
    case ExprOp::Mul:
      return eval(e->a, z) * eval(e->b, z);
    case ExprOp::Div: {
      Complex num = eval(e->a, z);
      Complex den = eval(e->b, z);
      if (std::abs(den) < 1e-300)
        throw Error(Errc::DivisionNearZero, "divisor modulus < 1e-300");
      return num / den;
    }
    case ExprOp::Pow:
      return ipow(eval(e->a, z), e->index);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Field tables

FieldTable FieldTable::zeros(int n) {
  FieldTable ft;
  ft.n = n;
  Expr zero = make_literal(Complex(0.0));
  ft.a_sym.assign(static_cast<size_t>(n) * n, zero);
  ft.a_mixed.assign(static_cast<size_t>(n) * n, zero);
  ft.b.assign(n, zero);
  return ft;
}

void FieldTable::set_sym(int i, int j, Expr e) {
  a_sym[i * n + j] = e;
  a_sym[j * n + i] = std::move(e);
}

namespace {

bool is_zero_literal(const Expr& e) {
  return e->op == ExprOp::Literal && e->value == Complex(0.0);
}

Expr parse_entry(const nlohmann::json& cell, const char* what) {
  if (!cell.is_string())
    throw Error(Errc::InvalidMetricFile,
                std::string(what) + " entries must be expression strings");
  return parse(cell.get<std::string>());
}

}  // namespace

FieldTable field_table_from_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidMetricFile, e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
    throw Error(Errc::InvalidMetricFile, "top-level object with integer \"n\" required");
  const int n = doc["n"].get<int>();
  if (n < 1 || n > 64)
    throw Error(Errc::InvalidMetricFile, "n must be in [1, 64]");

  FieldTable ft = FieldTable::zeros(n);

  auto matrix_entries = [&](const char* key) {
    std::vector<std::vector<Expr>> rows(n, std::vector<Expr>(n, nullptr));
    if (!doc.contains(key)) return rows;
    const auto& arr = doc[key];
    if (!arr.is_array() || arr.size() > static_cast<size_t>(n))
      throw Error(Errc::InvalidMetricFile,
                  std::string(key) + " must be an array of at most n rows");
    for (size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_array() || arr[i].size() > static_cast<size_t>(n))
        throw Error(Errc::InvalidMetricFile,
                    std::string(key) + " rows must be arrays of at most n entries");
      for (size_t j = 0; j < arr[i].size(); ++j)
        rows[i][j] = parse_entry(arr[i][j], key);
    }
    return rows;
  };

  auto sym_rows = matrix_entries("a_sym");
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Expr upper = sym_rows[i][j];
      Expr lower = sym_rows[j][i];
      if (upper && lower && i != j && !structurally_equal(upper, lower) &&
          !is_zero_literal(upper) && !is_zero_literal(lower))
        throw Error(Errc::InvalidMetricFile,
                    "a_sym[" + std::to_string(i) + "][" + std::to_string(j) +
                        "] and its mirror differ; specify one triangle");
      Expr chosen = upper && !is_zero_literal(upper) ? upper
                    : lower                          ? lower
                    : upper                          ? upper
                                                     : make_literal(Complex(0.0));
      ft.set_sym(i, j, chosen);
    }
  }

  auto mixed_rows = matrix_entries("a_mixed");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (mixed_rows[i][j]) ft.set_mixed(i, j, mixed_rows[i][j]);

  if (doc.contains("b")) {
    const auto& arr = doc["b"];
    if (!arr.is_array() || arr.size() > static_cast<size_t>(n))
      throw Error(Errc::InvalidMetricFile, "b must be an array of at most n entries");
    for (size_t i = 0; i < arr.size(); ++i) ft.b[i] = parse_entry(arr[i], "b");
  }

  for (const auto& e : ft.a_sym) bind(e, n);
  for (const auto& e : ft.a_mixed) bind(e, n);
  for (const auto& e : ft.b) bind(e, n);
  return ft;
}

}  // namespace rcf
