#pragma once

#include <stdexcept>
#include <string>

namespace k3kit {

// Domain errors carry a stable machine-readable code; the CLI maps them to
// "ERROR <code>: <detail>" with exit status 3.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void raise(const std::string& code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace k3kit
