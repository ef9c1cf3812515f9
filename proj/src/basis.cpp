#include "minimax/basis.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "minimax/error.hpp"

namespace minimax {

namespace {

std::string join(const std::vector<std::string>& xs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t position, std::string found, std::vector<std::string> expected)
    : Error("ParseError at position " + std::to_string(position) + ": unexpected " + found +
            "; expected one of: " + join(expected, ", ")),
      position_(position),
      found_(std::move(found)),
      expected_(std::move(expected)) {}

namespace {

using Op = ExprNode::Op;

struct EvalFailure {
  const char* what;
};

double eval(const ExprNode& n, std::span<const double> x) {
  switch (n.op) {
    case Op::constant:
      return n.value;
    case Op::variable:
      return x[n.index];
    case Op::add:
      return eval(*n.lhs, x) + eval(*n.rhs, x);
    case Op::sub:
      return eval(*n.lhs, x) - eval(*n.rhs, x);
    case Op::mul:
      return eval(*n.lhs, x) * eval(*n.rhs, x);
    case Op::div: {
      const double den = eval(*n.rhs, x);
      if (den == 0.0) throw EvalFailure{"division by zero"};
      return eval(*n.lhs, x) / den;
    }
    case Op::neg:
      return -eval(*n.lhs, x);
    case Op::pow: {
      const double base = eval(*n.lhs, x);
      if (n.exponent < 0 && base == 0.0) throw EvalFailure{"division by zero (negative power of 0)"};
      return std::pow(base, n.exponent);
    }
    case Op::exp:
      return std::exp(eval(*n.lhs, x));
    case Op::cos:
      return std::cos(eval(*n.lhs, x));
    case Op::sin:
      return std::sin(eval(*n.lhs, x));
  }
  return 0.0;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string print(const ExprNode& n) {
  switch (n.op) {
    case Op::constant:
      return n.value < 0 ? "(" + format_number(n.value) + ")" : format_number(n.value);
    case Op::variable:
      return "x" + std::to_string(n.index + 1);
    case Op::add:
      return "(" + print(*n.lhs) + " + " + print(*n.rhs) + ")";
    case Op::sub:
      return "(" + print(*n.lhs) + " - " + print(*n.rhs) + ")";
    case Op::mul:
      return "(" + print(*n.lhs) + " * " + print(*n.rhs) + ")";
    case Op::div:
      return "(" + print(*n.lhs) + " / " + print(*n.rhs) + ")";
    case Op::neg:
      return "(-" + print(*n.lhs) + ")";
    case Op::pow:
      return "(" + print(*n.lhs) + ")^" + std::to_string(n.exponent);
    case Op::exp:
      return "exp(" + print(*n.lhs) + ")";
    case Op::cos:
      return "cos(" + print(*n.lhs) + ")";
    case Op::sin:
      return "sin(" + print(*n.lhs) + ")";
  }
  return {};
}

std::size_t arity_of(const ExprNode& n) {
  std::size_t a = n.op == Op::variable ? n.index + 1 : 0;
  if (n.lhs) a = std::max(a, arity_of(*n.lhs));
  if (n.rhs) a = std::max(a, arity_of(*n.rhs));
  return a;
}

// ---------------------------------------------------------------------------
// Tokenizer + recursive descent

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end:
      return "end of input";
    case Tok::number:
      return "number '" + t.text + "'";
    case Tok::ident:
      return "identifier '" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
          i = j;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        }
      }
      out.push_back({Tok::number, start, std::string(s.substr(start, i - start))});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::ident, start, std::string(s.substr(start, i - start))});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case ',': kind = Tok::comma; break;
      default:
        throw ParseError(start, "character '" + std::string(1, c) + "'",
                         {"number", "variable", "function", "operator", "'('", "')'", "','"});
    }
    out.push_back({kind, start, std::string(1, c)});
    ++i;
  }
  out.push_back({Tok::end, s.size(), ""});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string_view text, std::size_t dimension)
      : toks_(std::move(tokens)), text_(text), dim_(dimension) {}

  BasisSet parse_list() {
    BasisSet set;
    set.dimension = dim_;
    for (;;) {
      const std::size_t begin = peek().pos;
      ExprPtr e = expr();
      const std::size_t end = peek().pos;
      std::string label(text_.substr(begin, end - begin));
      while (!label.empty() && std::isspace(static_cast<unsigned char>(label.back()))) label.pop_back();
      set.functions.emplace_back(std::move(e), std::move(label));
      if (peek().kind == Tok::comma) {
        ++at_;
        continue;
      }
      if (peek().kind == Tok::end) break;
      fail({"operator", "','", "end of input"});
    }
    return set;
  }

 private:
  const Token& peek() const { return toks_[at_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().pos, describe(peek()), std::move(expected));
  }

  static ExprPtr node(Op op, ExprPtr lhs, ExprPtr rhs = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const Op op = peek().kind == Tok::plus ? Op::add : Op::sub;
      ++at_;
      lhs = node(op, lhs, term());
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      const Op op = peek().kind == Tok::star ? Op::mul : Op::div;
      ++at_;
      lhs = node(op, lhs, unary());
    }
    return lhs;
  }

  ExprPtr unary() {
    if (peek().kind == Tok::minus) {
      ++at_;
      return node(Op::neg, unary());
    }
    if (peek().kind == Tok::plus) {
      ++at_;
      return unary();
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (peek().kind != Tok::caret) return base;
    ++at_;
    int sign = 1;
    if (peek().kind == Tok::minus || peek().kind == Tok::plus) {
      sign = peek().kind == Tok::minus ? -1 : 1;
      ++at_;
    }
    const Token& t = peek();
    const bool digits = t.kind == Tok::number && std::all_of(t.text.begin(), t.text.end(), [](char c) {
                          return std::isdigit(static_cast<unsigned char>(c));
                        });
    if (!digits) fail({"integer exponent"});
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc()) fail({"integer exponent"});
    ++at_;
    auto n = std::make_shared<ExprNode>();
    n->op = Op::pow;
    n->lhs = std::move(base);
    n->exponent = sign * value;
    return n;
  }

  ExprPtr primary() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::number: {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail({"number"});
        ++at_;
        auto n = std::make_shared<ExprNode>();
        n->op = Op::constant;
        n->value = v;
        return n;
      }
      case Tok::lparen: {
        ++at_;
        ExprPtr e = expr();
        if (peek().kind != Tok::rparen) fail({"operator", "')'"});
        ++at_;
        return e;
      }
      case Tok::ident: {
        if (t.text == "exp" || t.text == "cos" || t.text == "sin") {
          const Op op = t.text == "exp" ? Op::exp : t.text == "cos" ? Op::cos : Op::sin;
          ++at_;
          if (peek().kind != Tok::lparen) fail({"'('"});
          ++at_;
          ExprPtr arg = expr();
          if (peek().kind != Tok::rparen) fail({"operator", "')'"});
          ++at_;
          return node(op, arg);
        }
        const std::size_t index = variable_index(t);
        ++at_;
        auto n = std::make_shared<ExprNode>();
        n->op = Op::variable;
        n->index = index;
        return n;
      }
      default:
        fail({"number", "variable", "function", "'('"});
    }
  }

  std::size_t variable_index(const Token& t) const {
    std::size_t index = 0;
    bool known = false;
    if (t.text.size() >= 2 && t.text[0] == 'x' &&
        std::all_of(t.text.begin() + 1, t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
        t.text[1] != '0') {
      const auto [ptr, ec] = std::from_chars(t.text.data() + 1, t.text.data() + t.text.size(), index);
      known = ec == std::errc();
      index -= 1;
    } else if (dim_ <= 3 && (t.text == "x" || t.text == "y" || t.text == "z")) {
      index = static_cast<std::size_t>(t.text[0] == 'x' ? 0 : t.text[0] == 'y' ? 1 : 2);
      known = true;
    }
    if (!known) throw ParseError(t.pos, describe(t), {"number", "variable", "function", "'('"});
    if (index >= dim_)
      throw DimensionError("variable '" + t.text + "' at position " + std::to_string(t.pos) +
                           " exceeds point dimension " + std::to_string(dim_));
    return index;
  }

  std::vector<Token> toks_;
  std::string_view text_;
  std::size_t dim_;
  std::size_t at_ = 0;
};

}  // namespace

double BasisFunction::evaluate(std::span<const double> x) const {
  double v = 0.0;
  try {
    v = eval(*expr_, x);
  } catch (const EvalFailure& f) {
    throw EvaluationError(label_ + ": " + f.what, std::numeric_limits<std::size_t>::max(),
                          std::numeric_limits<std::size_t>::max());
  }
  if (!std::isfinite(v))
    throw EvaluationError(label_ + ": non-finite value", std::numeric_limits<std::size_t>::max(),
                          std::numeric_limits<std::size_t>::max());
  return v;
}

std::string BasisFunction::to_spec() const { return print(*expr_); }

std::size_t BasisFunction::arity() const { return arity_of(*expr_); }

std::vector<std::string> BasisSet::labels() const {
  std::vector<std::string> out;
  out.reserve(functions.size());
  for (const auto& f : functions) out.push_back(f.label());
  return out;
}

std::string BasisSet::to_spec() const {
  std::string out;
  for (std::size_t j = 0; j < functions.size(); ++j) {
    if (j) out += ", ";
    out += functions[j].to_spec();
  }
  return out;
}

BasisSet parse_basis_spec(std::string_view text, std::size_t dimension) {
  if (dimension == 0) throw DimensionError("point dimension must be at least 1");
  Parser parser(tokenize(text), text, dimension);
  return parser.parse_list();
}

Matrix design_matrix(const BasisSet& basis, std::span<const EvaluationPoint> points) {
  Matrix g(points.size(), basis.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].dimension() != basis.dimension)
      throw DimensionMismatch("point " + std::to_string(i) + " has dimension " +
                              std::to_string(points[i].dimension()) + ", basis expects " +
                              std::to_string(basis.dimension));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      try {
        g(i, j) = basis.functions[j].evaluate(points[i].coordinates);
      } catch (const EvaluationError& e) {
        throw EvaluationError(std::string(e.what()) + " (point " + std::to_string(i) + ", function " +
                                  std::to_string(j) + ")",
                              i, j);
      }
    }
  }
  return g;
}

std::size_t matrix_rank_estimate(const Matrix& matrix, double rank_tol) {
  Matrix a = matrix;
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  const std::size_t steps = std::min(n, m);
  double largest = 0.0;
  std::size_t rank = 0;
  std::vector<double> v(n);
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t pivot = k;
    double pivot_norm = -1.0;
    for (std::size_t j = k; j < m; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += a(i, j) * a(i, j);
      if (s > pivot_norm) {
        pivot_norm = s;
        pivot = j;
      }
    }
    pivot_norm = std::sqrt(pivot_norm);
    if (k == 0) largest = pivot_norm;
    if (largest == 0.0 || pivot_norm <= rank_tol * largest) break;
    if (pivot != k)
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, pivot));

    // Householder vector zeroing a(k+1.., k).
    const double alpha = a(k, k) >= 0.0 ? -pivot_norm : pivot_norm;
    for (std::size_t i = k; i < n; ++i) v[i] = a(i, k);
    v[k] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 > 0.0) {
      for (std::size_t j = k; j < m; ++j) {
        double s = 0.0;
        for (std::size_t i = k; i < n; ++i) s += v[i] * a(i, j);
        s = 2.0 * s / vnorm2;
        for (std::size_t i = k; i < n; ++i) a(i, j) -= s * v[i];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace minimax
