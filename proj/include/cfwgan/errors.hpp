// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace cfwgan {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input violates an operation's stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Quadrature stagnation, divergence, or a failed internal cross-check.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Malformed argument such as an unparsable spec string or mismatched sizes.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void throw_domain(const std::string& what);
[[noreturn]] void throw_precondition(const std::string& what);
[[noreturn]] void throw_numeric(const std::string& what);
[[noreturn]] void throw_invalid(const std::string& what);

const char* version() noexcept;

}  // namespace cfwgan
