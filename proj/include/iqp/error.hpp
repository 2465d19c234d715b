#pragma once

#include <stdexcept>
#include <string>

namespace iqp {

enum class ErrorKind {
  Malformed,    // input violates a structural invariant
  Unsupported,  // operation not defined for this input (e.g. non-mutable vertex)
  Limit,        // resource guard tripped (truncation too large, path blowup)
  Internal,     // postcondition failed; indicates a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

const char* to_string(ErrorKind kind) noexcept;

}  // namespace iqp
