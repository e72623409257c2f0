#pragma once

#include <stdexcept>
#include <string>

namespace gridtriage {

/// Base for all domain-rule violations. Loading a dataset rethrows the
/// concrete subtype with file/record context prepended to the message.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// network construction
class DuplicateId : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class DanglingReference : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class CycleDetected : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class DisconnectedBus : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// lookups
class UnknownLine : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class UnknownFeeder : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// lifetime-class table
class InvalidLifetimeClass : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class NonMonotoneP0 : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class NonMonotoneThreshold : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class OverlappingLifetimes : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// damage
class EmptyClassOnFeeder : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class DamageExceedsInventory : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// sweep
class InvalidRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// File could not be read or is not syntactically valid.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File parses but does not match the dataset schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output file could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gridtriage
