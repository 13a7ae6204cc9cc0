#include "hallvlasov/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "hallvlasov/errors.hpp"

namespace hv {

struct Expression::Node {
  enum class Kind { Number, X, L, Neg, Add, Sub, Mul, Div, Pow, Call } kind = Kind::Number;
  double value = 0.0;
  double (*fn)(double) = nullptr;
  std::vector<std::shared_ptr<const Node>> args;

  double eval(double x, double L) const {
    switch (kind) {
      case Kind::Number: return value;
      case Kind::X: return x;
      case Kind::L: return L;
      case Kind::Neg: return -args[0]->eval(x, L);
      case Kind::Add: return args[0]->eval(x, L) + args[1]->eval(x, L);
      case Kind::Sub: return args[0]->eval(x, L) - args[1]->eval(x, L);
      case Kind::Mul: return args[0]->eval(x, L) * args[1]->eval(x, L);
      case Kind::Div: return args[0]->eval(x, L) / args[1]->eval(x, L);
      case Kind::Pow: return std::pow(args[0]->eval(x, L), args[1]->eval(x, L));
      case Kind::Call: return fn(args[0]->eval(x, L));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr leaf(Kind k, double v = 0.0) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->value = v;
  return n;
}

NodePtr op(Kind k, NodePtr a, NodePtr b = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->args.push_back(std::move(a));
  if (b) n->args.push_back(std::move(b));
  return n;
}

double (*lookup(const std::string& name))(double) {
  if (name == "sin") return [](double v) { return std::sin(v); };
  if (name == "cos") return [](double v) { return std::cos(v); };
  if (name == "tan") return [](double v) { return std::tan(v); };
  if (name == "exp") return [](double v) { return std::exp(v); };
  if (name == "log") return [](double v) { return std::log(v); };
  if (name == "sqrt") return [](double v) { return std::sqrt(v); };
  if (name == "abs") return [](double v) { return std::fabs(v); };
  if (name == "tanh") return [](double v) { return std::tanh(v); };
  if (name == "sinh") return [](double v) { return std::sinh(v); };
  if (name == "cosh") return [](double v) { return std::cosh(v); };
  return nullptr;
}

class Parser {
 public:
  Parser(const std::string& s, int line) : s_(s), line_(line) {}

  NodePtr parse() {
    NodePtr n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_, "expression '" + s_ + "': " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr sum() {
    NodePtr n = product();
    for (;;) {
      if (accept('+')) n = op(Kind::Add, n, product());
      else if (accept('-')) n = op(Kind::Sub, n, product());
      else return n;
    }
  }

  NodePtr product() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) n = op(Kind::Mul, n, unary());
      else if (accept('/')) n = op(Kind::Div, n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (accept('-')) return op(Kind::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return op(Kind::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = sum();
      if (!accept(')')) fail("missing ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* begin = s_.data() + pos_;
      const auto [end, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
      if (ec != std::errc()) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return leaf(Kind::Number, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "x") return leaf(Kind::X);
      if (name == "L") return leaf(Kind::L);
      if (name == "pi") return leaf(Kind::Number, std::numbers::pi);
      auto fn = lookup(name);
      if (fn == nullptr) fail("unknown name '" + name + "'");
      if (!accept('(')) fail("'" + name + "' needs an argument in parentheses");
      auto n = std::make_shared<Expression::Node>();
      n->kind = Kind::Call;
      n->fn = fn;
      n->args.push_back(sum());
      if (!accept(')')) fail("missing ')'");
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression() : root_(leaf(Kind::Number, 0.0)), text_("0") {}

Expression Expression::parse(const std::string& text, int line) {
  Expression e;
  e.root_ = Parser(text, line).parse();
  e.text_ = text;
  return e;
}

Expression Expression::constant(double value) {
  Expression e;
  e.root_ = leaf(Kind::Number, value);
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, value);
  e.text_.assign(buf, r.ptr);
  return e;
}

double Expression::operator()(double x, double L) const { return root_->eval(x, L); }

}  // namespace hv
