#pragma once

#include <stdexcept>
#include <string>

namespace symtail {

/// Argument outside the mathematical domain of an operation (e.g. t >= n*h).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A hypothesis that the caller is required to establish does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource limit (support width, enumeration size) was hit.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed input document.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace symtail
