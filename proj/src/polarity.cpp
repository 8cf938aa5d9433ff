#include "sentiment/polarity.hpp"

namespace sentiment {

std::string_view to_string(Polarity p) noexcept {
  switch (p) {
    case Polarity::negative: return "negative";
    case Polarity::neutral: return "neutral";
    case Polarity::positive: return "positive";
  }
  return "?";
}

std::optional<Polarity> parse_polarity(std::string_view text) noexcept {
  constexpr std::string_view ws = " \t\r\n";
  const auto first = text.find_first_not_of(ws);
  if (first == std::string_view::npos) return std::nullopt;
  text = text.substr(first, text.find_last_not_of(ws) - first + 1);
  for (Polarity p : kClassOrder) {
    if (text == to_string(p)) return p;
  }
  return std::nullopt;
}

}  // namespace sentiment
