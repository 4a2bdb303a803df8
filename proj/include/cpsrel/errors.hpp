#pragma once

#include <stdexcept>
#include <string>

namespace cpsrel {

/// Invalid input data or parameters; maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem / stream failure; maps to CLI exit code 1.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cpsrel
