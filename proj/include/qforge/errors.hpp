#pragma once

#include <stdexcept>
#include <string>

namespace qforge {

// Malformed or inconsistent input data (bad words, tables, JSON, ids).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside its stated preconditions.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Arguments are well-formed but lie in different components of a rack.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A certified bound was contradicted by a measured value.
class CertificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qforge
