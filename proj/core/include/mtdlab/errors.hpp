#pragma once

#include <stdexcept>
#include <string>

namespace mtdlab {

// Input or precondition problem (bad file contents, bad plan, bad argument).
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem problem (missing file, unwritable directory). CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mtdlab
