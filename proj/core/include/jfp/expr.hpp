// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace jfp {

/// Immutable arithmetic expression in at most one variable.
///
/// Grammar (usual precedence, ^ binds tighter than unary minus and is
/// right-associative):
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?
///   primary := number | variable | func '(' expr (',' expr)* ')' | '(' expr ')'
///
/// Functions: abs, sqrt, exp, log, min, max. Parse errors throw ScenarioError
/// carrying the column.
class Expr {
 public:
  struct Node;

  /// Parses `text`; `variable` is the only identifier accepted besides the
  /// function names (empty means the expression must be constant).
  static Expr parse(std::string_view text, std::string_view variable = "x");
  static Expr constant(double value);

  /// Evaluates with the variable bound to `v`. Domain errors yield NaN.
  double operator()(double v = 0.0) const;

  [[nodiscard]] bool is_constant() const noexcept;
  [[nodiscard]] const std::string& variable() const noexcept { return variable_; }

  /// Canonical text: minimal parentheses, shortest round-trip numbers.
  /// parse(to_string()) reproduces the same tree.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.variable_ == b.variable_ && a.to_string() == b.to_string();
  }

 private:
  Expr(std::shared_ptr<const Node> root, std::string variable);

  std::shared_ptr<const Node> root_;
  std::string variable_;
};

}  // namespace jfp
