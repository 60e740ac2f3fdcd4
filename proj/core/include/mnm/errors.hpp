#pragma once

#include <stdexcept>

namespace mnm {

// Invalid argument or violated precondition. CLI exit code 2.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested computation exceeds the configured enumeration budget. CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be read or written. CLI exit code 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A table column is constant, so min-max rescaling is undefined.
class NormalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mnm
