#pragma once

#include <memory>
#include <string>

namespace hv {

/// Arithmetic expression in x, e.g. `1 + 0.1*sin(pi*x/L)`.
///
/// Grammar: numbers, the variables x and L, the constant pi, + - * / ^
/// (right associative), unary minus, parentheses and the functions sin,
/// cos, tan, exp, log, sqrt, abs, tanh, sinh, cosh.
class Expression {
 public:
  struct Node;

  Expression();
  /// Throws ParseError(line, ...) on malformed input.
  static Expression parse(const std::string& text, int line = 0);
  static Expression constant(double value);

  double operator()(double x, double L) const;
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace hv
