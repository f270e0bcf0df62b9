#pragma once

#include <stdexcept>
#include <string>

namespace valdyn {

// Domain error with a stable machine-readable code ("NotDivisorial",
// "SyntaxError", ...) followed by a human-readable message.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

}  // namespace valdyn
