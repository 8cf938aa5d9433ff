#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sentiment {

/// Coarse failure class. The CLI prints it as the first token of its
/// single-line error message, so the spellings are part of the interface.
enum class ErrorCategory {
  usage,
  config,
  io,
  dataset,
  artifact,
  dimension,
  training,
  evaluation,
};

std::string_view to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace sentiment
