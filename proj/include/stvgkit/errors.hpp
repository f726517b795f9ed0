#pragma once

#include <stdexcept>
#include <string>

namespace stvg {

// A file could not be read or written, or a line in it could not be parsed.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Input data violates a documented invariant: a bad tube or record, a
// manifest mismatch surfaced as an error, or a fusion gap under the fail
// policy.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stvg
