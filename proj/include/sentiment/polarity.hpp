#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace sentiment {

/// Three-way sentiment label. The enumerator order is the fixed class order
/// used for tie-breaking, matrix layout and serialized parameter rows.
enum class Polarity : unsigned char { negative = 0, neutral = 1, positive = 2 };

inline constexpr std::size_t kNumClasses = 3;

inline constexpr std::array<Polarity, kNumClasses> kClassOrder = {
    Polarity::negative, Polarity::neutral, Polarity::positive};

constexpr std::size_t class_index(Polarity p) noexcept {
  return static_cast<std::size_t>(p);
}

constexpr Polarity class_at(std::size_t index) noexcept {
  return static_cast<Polarity>(index);
}

std::string_view to_string(Polarity p) noexcept;

/// Exact match against "negative", "neutral", "positive" after trimming
/// surrounding ASCII whitespace.
std::optional<Polarity> parse_polarity(std::string_view text) noexcept;

/// Index of the largest score; the earliest class wins ties.
template <typename Scores>
Polarity argmax_class(const Scores& scores) noexcept {
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumClasses; ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return class_at(best);
}

}  // namespace sentiment
