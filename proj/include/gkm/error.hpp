/*
  error.hpp — the single exception type used by the library.

  Every throw carries a short machine-readable code ("NotInSpan",
  "GKMViolation", ...) plus a human message; CLI and tests match on the code.
*/
#pragma once

#include <stdexcept>
#include <string>

namespace gkm {

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace gkm
