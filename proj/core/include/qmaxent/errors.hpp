#pragma once

#include <stdexcept>
#include <string>

namespace qmaxent {

// Vector or matrix sizes that do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Caller misuse: index out of range, duplicate selection, bad parameter.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A candidate constraint is numerically dependent on the selected span, or
// no admissible candidate exists at all.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Gram matrix too ill-conditioned for a direct solve.
class ConditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed dataset, spec, pool or state file.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmaxent
