#pragma once

#include <stdexcept>
#include <string>

namespace rookwalk {

/// Domain error carrying a short machine-readable kind tag
/// (e.g. "insufficient-terms", "memory-budget") next to the message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

}  // namespace rookwalk
