#include "deforma/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <string>

#include "deforma/errors.hpp"

namespace deforma {
namespace {

// `log` only appears in derivative trees of x-dependent exponents.
enum class Op { number, var, neg, add, sub, mul, div, pow, exp, log, sin, cos, sqrt, abs };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  double value = 0.0;
  NodePtr lhs;
  NodePtr rhs;
};

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  return std::make_shared<const Node>(Node{op, 0.0, std::move(lhs), std::move(rhs)});
}
NodePtr number(double v) { return std::make_shared<const Node>(Node{Op::number, v, nullptr, nullptr}); }

bool depends_on_x(const NodePtr& n) {
  if (!n) return false;
  if (n->op == Op::var) return true;
  return depends_on_x(n->lhs) || depends_on_x(n->rhs);
}

double eval(const Node& n, double x) {
  switch (n.op) {
    case Op::number: return n.value;
    case Op::var: return x;
    case Op::neg: return -eval(*n.lhs, x);
    case Op::add: return eval(*n.lhs, x) + eval(*n.rhs, x);
    case Op::sub: return eval(*n.lhs, x) - eval(*n.rhs, x);
    case Op::mul: return eval(*n.lhs, x) * eval(*n.rhs, x);
    case Op::div: return eval(*n.lhs, x) / eval(*n.rhs, x);
    case Op::pow: return std::pow(eval(*n.lhs, x), eval(*n.rhs, x));
    case Op::exp: return std::exp(eval(*n.lhs, x));
    case Op::log: return std::log(eval(*n.lhs, x));
    case Op::sin: return std::sin(eval(*n.lhs, x));
    case Op::cos: return std::cos(eval(*n.lhs, x));
    case Op::sqrt: return std::sqrt(eval(*n.lhs, x));
    case Op::abs: return std::abs(eval(*n.lhs, x));
  }
  return 0.0;
}

// Tree derivative d/dx; no simplification beyond dropping constant branches.
NodePtr differentiate(const NodePtr& n) {
  if (!depends_on_x(n)) return number(0.0);
  const NodePtr& u = n->lhs;
  const NodePtr& v = n->rhs;
  switch (n->op) {
    case Op::number: return number(0.0);
    case Op::var: return number(1.0);
    case Op::neg: return make(Op::neg, differentiate(u));
    case Op::add: return make(Op::add, differentiate(u), differentiate(v));
    case Op::sub: return make(Op::sub, differentiate(u), differentiate(v));
    case Op::mul:
      return make(Op::add, make(Op::mul, differentiate(u), v), make(Op::mul, u, differentiate(v)));
    case Op::div:
      return make(Op::div,
                  make(Op::sub, make(Op::mul, differentiate(u), v), make(Op::mul, u, differentiate(v))),
                  make(Op::mul, v, v));
    case Op::pow:
      if (!depends_on_x(v)) {
        // c * u^(c-1) * u'
        return make(Op::mul, make(Op::mul, v, make(Op::pow, u, make(Op::sub, v, number(1.0)))),
                    differentiate(u));
      }
      // u^v (v' ln u + v u' / u)
      return make(Op::mul, n,
                  make(Op::add, make(Op::mul, differentiate(v), make(Op::log, u)),
                       make(Op::div, make(Op::mul, v, differentiate(u)), u)));
    case Op::exp: return make(Op::mul, n, differentiate(u));
    case Op::log: return make(Op::div, differentiate(u), u);
    case Op::sin: return make(Op::mul, make(Op::cos, u), differentiate(u));
    case Op::cos: return make(Op::neg, make(Op::mul, make(Op::sin, u), differentiate(u)));
    case Op::sqrt:
      return make(Op::div, differentiate(u), make(Op::mul, number(2.0), n));
    case Op::abs:
      // sign(u) u' = u u' / |u|
      return make(Op::div, make(Op::mul, u, differentiate(u)), n);
  }
  return nullptr;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

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
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Op::add, lhs, term());
      else if (accept('-')) lhs = make(Op::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Op::mul, lhs, unary());
      else if (accept('/')) lhs = make(Op::div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make(Op::pow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view ident = text_.substr(start, pos_ - start);
      if (ident == "x") return make(Op::var);
      Op op;
      if (ident == "exp") op = Op::exp;
      else if (ident == "sin") op = Op::sin;
      else if (ident == "cos") op = Op::cos;
      else if (ident == "sqrt") op = Op::sqrt;
      else if (ident == "abs") op = Op::abs;
      else throw ParseError("unknown identifier '" + std::string(ident) + "'", start);
      expect('(');
      NodePtr arg = expr();
      expect(')');
      return make(op, arg);
    }
    if (accept('(')) {
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_ + 1;
      if (mark < text_.size() && (text_[mark] == '+' || text_[mark] == '-')) ++mark;
      if (mark < text_.size() && std::isdigit(static_cast<unsigned char>(text_[mark]))) {
        pos_ = mark;
        digits();
      }
    }
    const std::string_view literal = text_.substr(start, pos_ - start);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(literal.data(), literal.data() + literal.size(), v);
    if (ec != std::errc() || end != literal.data() + literal.size()) {
      throw ParseError("malformed number", start);
    }
    return number(v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

FunctionHandle to_handle(const NodePtr& root, int depth) {
  FunctionHandle f([root](double x) { return Complex(eval(*root, x), 0.0); });
  if (depth == 0) return f;
  return f.with_derivative(to_handle(differentiate(root), depth - 1));
}

}  // namespace

FunctionHandle parse_expression(std::string_view text) {
  Parser parser(text);
  return to_handle(parser.parse(), 3);
}

}  // namespace deforma
