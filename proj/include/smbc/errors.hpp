#pragma once

#include <stdexcept>
#include <string>

namespace smbc {

// Bad user input: malformed pmf, inconsistent dimensions, out-of-range parameter.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// The requested computation has no feasible answer (e.g. cost budget below min cost).
class InfeasibilityError : public std::runtime_error {
 public:
  explicit InfeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

// File system / stream failure.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace smbc
