// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace jfp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A map, gauge or integrand produced NaN/inf at `where`.
class NonFiniteError : public Error {
 public:
  NonFiniteError(const std::string& what_arg, double where)
      : Error(what_arg), where_(where) {}
  [[nodiscard]] double where() const noexcept { return where_; }

 private:
  double where_;
};

/// A point fell outside the domain a map is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach the requested absolute tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what_arg, double upper_limit)
      : Error(what_arg), upper_limit_(upper_limit) {}
  [[nodiscard]] double upper_limit() const noexcept { return upper_limit_; }

 private:
  double upper_limit_;
};

/// Scenario text failed to parse or validate.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

}  // namespace jfp
