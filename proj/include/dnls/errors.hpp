#pragma once

#include <stdexcept>
#include <string>

namespace dnls {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its domain (bad grid, zero field,
/// mass above a threshold, data that does not decay at the boundary, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A frame-specific operation received a field tagged with the other frame.
class FrameMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Malformed scenario configuration or datum specification.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dnls
