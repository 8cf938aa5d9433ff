#include "sentiment/error.hpp"

namespace sentiment {

std::string_view to_string(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::usage: return "usage";
    case ErrorCategory::config: return "config";
    case ErrorCategory::io: return "io";
    case ErrorCategory::dataset: return "dataset";
    case ErrorCategory::artifact: return "artifact";
    case ErrorCategory::dimension: return "dimension";
    case ErrorCategory::training: return "training";
    case ErrorCategory::evaluation: return "evaluation";
  }
  return "unknown";
}

}  // namespace sentiment
