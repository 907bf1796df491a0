#pragma once

#include <stdexcept>
#include <string>

namespace minkowski {

/// Raised when an exact orbit or continued-fraction expansion fails to close
/// into a cycle within the allowed number of steps.
class NoCycleError : public std::runtime_error {
 public:
  explicit NoCycleError(const std::string& what) : std::runtime_error(what) {}
};

/// Division by zero in a Moebius evaluation (cy + d = 0).
class PoleError : public std::domain_error {
 public:
  explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

/// A requested enumeration or composition would exceed the configured cap.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative eigen-solver did not converge.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace minkowski
