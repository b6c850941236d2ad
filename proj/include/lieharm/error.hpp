#pragma once

#include <stdexcept>
#include <string>

namespace lieharm {

/// Malformed or dimensionally inconsistent input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A function evaluated outside its domain (log of a non-positive entry, dependent plane, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A hypothesis required by an operation does not hold for the given data.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A builder or construction could not produce a valid object.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lieharm
