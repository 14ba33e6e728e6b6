// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include "jfp/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "jfp/error.hpp"

namespace jfp {

enum class Op { num, var, neg, add, sub, mul, div, pow, call };

struct Expr::Node {
  Op op = Op::num;
  double value = 0.0;
  std::string name;  // function name for Op::call
  std::vector<std::shared_ptr<const Node>> kids;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

constexpr std::array<std::string_view, 6> kFunctions = {"abs", "sqrt", "exp", "log", "min", "max"};

std::size_t arity(std::string_view fn) { return fn == "min" || fn == "max" ? 2 : 1; }

NodePtr make(Op op, std::vector<NodePtr> kids = {}, double value = 0.0, std::string name = {}) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->value = value;
  n->name = std::move(name);
  n->kids = std::move(kids);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view variable) : text_(text), variable_(variable) {}

  NodePtr run() {
    NodePtr e = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    throw ScenarioError("expression \"" + std::string(text_) + "\", column " +
                        std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) {
        lhs = make(Op::add, {lhs, term()});
      } else if (eat('-')) {
        lhs = make(Op::sub, {lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*')) {
        lhs = make(Op::mul, {lhs, unary()});
      } else if (eat('/')) {
        lhs = make(Op::div, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Op::neg, {unary()});
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make(Op::pow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) error("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string id(text_.substr(start, pos_ - start));
      if (!variable_.empty() && id == variable_) return make(Op::var);
      for (auto fn : kFunctions) {
        if (id != fn) continue;
        if (!eat('(')) error("expected '(' after " + id);
        std::vector<NodePtr> args{expr()};
        while (eat(',')) args.push_back(expr());
        if (!eat(')')) error("expected ')' closing " + id);
        if (args.size() != arity(fn)) {
          error(id + " takes " + std::to_string(arity(fn)) + " argument(s)");
        }
        return make(Op::call, std::move(args), 0.0, id);
      }
      pos_ = start;
      error(variable_.empty() ? "expected a constant, found identifier '" + id + "'"
                              : "unknown identifier '" + id + "' (variable is '" +
                                    std::string(variable_) + "')");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
        pos_ = q;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      pos_ = start;
      error("malformed number");
    }
    return make(Op::num, {}, v);
  }

  std::string_view text_;
  std::string_view variable_;
  std::size_t pos_ = 0;
};

double eval(const Expr::Node& n, double v) {
  switch (n.op) {
    case Op::num: return n.value;
    case Op::var: return v;
    case Op::neg: return -eval(*n.kids[0], v);
    case Op::add: return eval(*n.kids[0], v) + eval(*n.kids[1], v);
    case Op::sub: return eval(*n.kids[0], v) - eval(*n.kids[1], v);
    case Op::mul: return eval(*n.kids[0], v) * eval(*n.kids[1], v);
    case Op::div: return eval(*n.kids[0], v) / eval(*n.kids[1], v);
    case Op::pow: {
      const double b = eval(*n.kids[0], v);
      const double e = eval(*n.kids[1], v);
      if (e == 2.0) return b * b;
      return std::pow(b, e);
    }
    case Op::call: {
      const double a = eval(*n.kids[0], v);
      if (n.name == "abs") return std::abs(a);
      if (n.name == "sqrt") return std::sqrt(a);
      if (n.name == "exp") return std::exp(a);
      if (n.name == "log") return std::log(a);
      const double b = eval(*n.kids[1], v);
      if (n.name == "min") return std::fmin(a, b);
      return std::fmax(a, b);
    }
  }
  return NAN;
}

bool has_var(const Expr::Node& n) {
  if (n.op == Op::var) return true;
  for (const auto& k : n.kids) {
    if (has_var(*k)) return true;
  }
  return false;
}

int precedence(const Expr::Node& n) {
  switch (n.op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    default: return 5;
  }
}

std::string number_text(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void print(const Expr::Node& n, const std::string& var, std::string& out);

void print_wrapped(const Expr::Node& n, bool parens, const std::string& var, std::string& out) {
  if (parens) out += '(';
  print(n, var, out);
  if (parens) out += ')';
}

void print(const Expr::Node& n, const std::string& var, std::string& out) {
  const int p = precedence(n);
  switch (n.op) {
    case Op::num: out += number_text(n.value); return;
    case Op::var: out += var; return;
    case Op::neg:
      out += '-';
      print_wrapped(*n.kids[0], precedence(*n.kids[0]) < 3, var, out);
      return;
    case Op::pow:
      print_wrapped(*n.kids[0], precedence(*n.kids[0]) <= 4, var, out);
      out += '^';
      print_wrapped(*n.kids[1], precedence(*n.kids[1]) < 4, var, out);
      return;
    case Op::call:
      out += n.name;
      out += '(';
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) out += ", ";
        print(*n.kids[i], var, out);
      }
      out += ')';
      return;
    default: {
      static constexpr std::array<const char*, 4> sym = {" + ", " - ", " * ", " / "};
      const auto idx = static_cast<std::size_t>(n.op) - static_cast<std::size_t>(Op::add);
      print_wrapped(*n.kids[0], precedence(*n.kids[0]) < p, var, out);
      out += sym[idx];
      print_wrapped(*n.kids[1], precedence(*n.kids[1]) <= p, var, out);
      return;
    }
  }
}

}  // namespace

Expr::Expr(std::shared_ptr<const Node> root, std::string variable)
    : root_(std::move(root)), variable_(std::move(variable)) {}

Expr Expr::parse(std::string_view text, std::string_view variable) {
  return Expr(Parser(text, variable).run(), std::string(variable));
}

Expr Expr::constant(double value) { return Expr(make(Op::num, {}, value), ""); }

double Expr::operator()(double v) const { return eval(*root_, v); }

bool Expr::is_constant() const noexcept { return !has_var(*root_); }

std::string Expr::to_string() const {
  std::string out;
  print(*root_, variable_, out);
  return out;
}

}  // namespace jfp
