#pragma once

#include <memory>
#include <string>

namespace vhj {

// Arithmetic expressions over x, y, t with sin, cos, exp, abs, the constant
// pi, and + - * / ^ (right-associative power, unary minus). Used for data
// supplied through config files.
class Expr {
public:
  struct Node;

  // Throws ConfigError on any syntax problem, naming the offending token.
  static Expr parse(const std::string& text);

  double eval(double x, double y, double t) const;
  bool uses_time() const;
  const std::string& text() const { return text_; }

  Expr(Expr&&) noexcept;
  Expr& operator=(Expr&&) noexcept;
  Expr(const Expr&);
  Expr& operator=(const Expr&);
  ~Expr();

private:
  Expr(std::shared_ptr<const Node> root, std::string text);
  std::shared_ptr<const Node> root_;
  std::string text_;
};

} // namespace vhj
