// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace iodir {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown or duplicate labels, mismatched layouts.
class LayoutError : public Error {
 public:
  using Error::Error;
};

// Precondition violated on values (non-Hermitian, not bistochastic, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Unreadable or unwritable files.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace iodir
