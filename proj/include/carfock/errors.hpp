// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace carfock {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Occupation string width does not match its mode order.
class WidthError : public Error {
 public:
  using Error::Error;
};

/// Every amplitude pruned to zero where a nonzero state is required.
class ZeroStateError : public Error {
 public:
  using Error::Error;
};

/// Unknown label, duplicate label, or mismatched mode sets.
class ModeSetError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class KeepSetError : public Error {
 public:
  using Error::Error;
};

class HermiticityError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class PositivityError : public Error {
 public:
  using Error::Error;
};

class NormError : public Error {
 public:
  using Error::Error;
};

class PartitionError : public Error {
 public:
  using Error::Error;
};

/// NaN or infinite amplitude.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Exchange phase outside the set an operation is defined for.
class PhaseError : public Error {
 public:
  using Error::Error;
};

/// Raised when a superselection check aborts a command.
class SsrError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a state expression; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A reproduction check deviated from its expected value.
class DemoFailure : public Error {
 public:
  DemoFailure(std::string check_id, const std::string& message)
      : Error(check_id + ": " + message), check_id_(std::move(check_id)) {}

  const std::string& check_id() const noexcept { return check_id_; }

 private:
  std::string check_id_;
};

}  // namespace carfock
