#include "vhjlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "vhjlab/errors.hpp"

namespace vhj {

namespace {

enum class Op { Const, VarX, VarY, VarT, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Abs };

} // namespace

struct Expr::Node {
  Op op = Op::Const;
  double value = 0.0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct Token {
  enum class Kind { Number, Ident, Symbol, End } kind;
  std::string text;
  double number = 0.0;
};

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
    if (i_ >= s_.size()) {
      tok_ = {Token::Kind::End, "", 0.0};
      return;
    }
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* start = s_.c_str() + i_;
      char* end = nullptr;
      const double v = std::strtod(start, &end);
      if (end == start)
        throw ConfigError("bad number in expression near '" +
                          s_.substr(i_, 8) + "'");
      tok_ = {Token::Kind::Number,
              std::string(start, static_cast<size_t>(end - start)), v};
      i_ += static_cast<size_t>(end - start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() &&
             std::isalpha(static_cast<unsigned char>(s_[j])))
        ++j;
      tok_ = {Token::Kind::Ident, s_.substr(i_, j - i_), 0.0};
      i_ = j;
      return;
    }
    if (std::string("+-*/^()").find(c) != std::string::npos) {
      tok_ = {Token::Kind::Symbol, std::string(1, c), 0.0};
      ++i_;
      return;
    }
    throw ConfigError(std::string("unexpected character '") + c +
                      "' in expression");
  }

  const std::string& s_;
  size_t i_ = 0;
  Token tok_{Token::Kind::End, "", 0.0};
};

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->value = v;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
public:
  explicit Parser(const std::string& s) : lex_(s) {}

  NodePtr parse() {
    NodePtr e = sum();
    if (lex_.peek().kind != Token::Kind::End)
      throw ConfigError("trailing input in expression: '" + lex_.peek().text +
                        "'");
    return e;
  }

private:
  bool symbol(const char* s) {
    return lex_.peek().kind == Token::Kind::Symbol && lex_.peek().text == s;
  }

  NodePtr sum() {
    NodePtr e = product();
    while (symbol("+") || symbol("-")) {
      const bool add = lex_.take().text == "+";
      e = make(add ? Op::Add : Op::Sub, e, product());
    }
    return e;
  }

  NodePtr product() {
    NodePtr e = unary();
    while (symbol("*") || symbol("/")) {
      const bool mul = lex_.take().text == "*";
      e = make(mul ? Op::Mul : Op::Div, e, unary());
    }
    return e;
  }

  NodePtr unary() {
    if (symbol("-")) {
      lex_.take();
      return make(Op::Neg, unary());
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (symbol("^")) {
      lex_.take();
      return make(Op::Pow, base, unary()); // right associative, -ok in exponent
    }
    return base;
  }

  NodePtr atom() {
    const Token t = lex_.take();
    if (t.kind == Token::Kind::Number) return make(Op::Const, {}, {}, t.number);
    if (t.kind == Token::Kind::Symbol && t.text == "(") {
      NodePtr e = sum();
      if (!symbol(")")) throw ConfigError("missing ')' in expression");
      lex_.take();
      return e;
    }
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "x") return make(Op::VarX);
      if (t.text == "y") return make(Op::VarY);
      if (t.text == "t") return make(Op::VarT);
      if (t.text == "pi") return make(Op::Const, {}, {}, M_PI);
      Op fn;
      if (t.text == "sin")
        fn = Op::Sin;
      else if (t.text == "cos")
        fn = Op::Cos;
      else if (t.text == "exp")
        fn = Op::Exp;
      else if (t.text == "abs")
        fn = Op::Abs;
      else
        throw ConfigError("unknown name '" + t.text + "' in expression");
      if (!symbol("("))
        throw ConfigError("function '" + t.text + "' needs parentheses");
      lex_.take();
      NodePtr arg = sum();
      if (!symbol(")")) throw ConfigError("missing ')' in expression");
      lex_.take();
      return make(fn, arg);
    }
    throw ConfigError(t.kind == Token::Kind::End
                          ? "expression ended unexpectedly"
                          : "unexpected token '" + t.text + "' in expression");
  }

  Lexer lex_;
};

double eval_node(const Expr::Node& n, double x, double y, double t) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::VarX: return x;
    case Op::VarY: return y;
    case Op::VarT: return t;
    case Op::Add: return eval_node(*n.a, x, y, t) + eval_node(*n.b, x, y, t);
    case Op::Sub: return eval_node(*n.a, x, y, t) - eval_node(*n.b, x, y, t);
    case Op::Mul: return eval_node(*n.a, x, y, t) * eval_node(*n.b, x, y, t);
    case Op::Div: return eval_node(*n.a, x, y, t) / eval_node(*n.b, x, y, t);
    case Op::Pow:
      return std::pow(eval_node(*n.a, x, y, t), eval_node(*n.b, x, y, t));
    case Op::Neg: return -eval_node(*n.a, x, y, t);
    case Op::Sin: return std::sin(eval_node(*n.a, x, y, t));
    case Op::Cos: return std::cos(eval_node(*n.a, x, y, t));
    case Op::Exp: return std::exp(eval_node(*n.a, x, y, t));
    case Op::Abs: return std::abs(eval_node(*n.a, x, y, t));
  }
  return 0.0;
}

bool node_uses_time(const Expr::Node& n) {
  if (n.op == Op::VarT) return true;
  if (n.a && node_uses_time(*n.a)) return true;
  if (n.b && node_uses_time(*n.b)) return true;
  return false;
}

} // namespace

Expr Expr::parse(const std::string& text) {
  Parser parser(text);
  return Expr(parser.parse(), text);
}

double Expr::eval(double x, double y, double t) const {
  return eval_node(*root_, x, y, t);
}

bool Expr::uses_time() const { return node_uses_time(*root_); }

Expr::Expr(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}
Expr::Expr(Expr&&) noexcept = default;
Expr& Expr::operator=(Expr&&) noexcept = default;
Expr::Expr(const Expr&) = default;
Expr& Expr::operator=(const Expr&) = default;
Expr::~Expr() = default;

} // namespace vhj
