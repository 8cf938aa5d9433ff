// Character classes for tweet cleaning.

#include <cstdint>
#include <string>
#include <string_view>

#include "sentiment/preprocess.hpp"

namespace sentiment {

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one UTF-8 sequence at s[pos], advancing pos. Malformed input
// consumes one byte and yields kInvalid.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  std::size_t len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return kInvalid;
  }
  if (pos + len > s.size()) {
    ++pos;
    return kInvalid;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kInvalid;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong forms and surrogates.
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kInvalid;
  }
  pos += len;
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

constexpr bool in(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

// Alphabetic code points of the scripts likely to show up in tweets.
// Combining marks are kept so decomposed accents stay attached to their word.
bool is_word_char(char32_t cp) {
  if (cp < 0x80) return in(cp, 'a', 'z') || in(cp, 'A', 'Z');
  if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return true;
  if (in(cp, 0xC0, 0x24F)) return cp != 0xD7 && cp != 0xF7;
  if (in(cp, 0x250, 0x2AF)) return true;  // IPA
  if (in(cp, 0x300, 0x36F)) return true;  // combining diacritics
  if (cp == 0x386 || in(cp, 0x388, 0x3FF)) return cp != 0x3F6;  // Greek
  if (in(cp, 0x400, 0x52F)) return !in(cp, 0x482, 0x489);       // Cyrillic
  if (in(cp, 0x531, 0x556) || in(cp, 0x561, 0x587)) return true;  // Armenian
  if (in(cp, 0x5D0, 0x5EA)) return true;                          // Hebrew
  if (in(cp, 0x620, 0x64A) || in(cp, 0x671, 0x6D3)) return true;  // Arabic
  if (in(cp, 0x900, 0x963) || in(cp, 0x970, 0x97F)) return true;  // Devanagari
  if (in(cp, 0xE01, 0xE3A) || in(cp, 0xE40, 0xE4E)) return true;  // Thai
  if (in(cp, 0x1100, 0x11FF)) return true;                        // Hangul Jamo
  if (in(cp, 0x1E00, 0x1FFF)) return true;  // Latin extended additional, Greek extended
  if (in(cp, 0x3041, 0x3096) || in(cp, 0x30A1, 0x30FA) || cp == 0x30FC) return true;
  if (in(cp, 0x3400, 0x4DBF) || in(cp, 0x4E00, 0x9FFF)) return true;  // CJK
  if (in(cp, 0xAC00, 0xD7A3)) return true;                            // Hangul syllables
  if (in(cp, 0xFF21, 0xFF3A) || in(cp, 0xFF41, 0xFF5A)) return true;  // fullwidth Latin
  return false;
}

constexpr bool is_even(char32_t cp) { return (cp & 1u) == 0; }

// Simple one-to-one lowercase mapping. Every output is a fixed point.
char32_t to_lower(char32_t cp) {
  if (cp < 0x80) return in(cp, 'A', 'Z') ? cp + 32 : cp;
  if (in(cp, 0xC0, 0xDE)) return cp == 0xD7 ? cp : cp + 0x20;
  if (cp == 0x130) return U'i';
  if (cp == 0x178) return 0xFF;
  if (in(cp, 0x100, 0x137) || in(cp, 0x14A, 0x177)) return is_even(cp) ? cp + 1 : cp;
  if (in(cp, 0x139, 0x148) || in(cp, 0x179, 0x17E)) return is_even(cp) ? cp : cp + 1;
  if (cp == 0x386) return 0x3AC;
  if (in(cp, 0x388, 0x38A)) return cp + 37;
  if (cp == 0x38C) return 0x3CC;
  if (in(cp, 0x38E, 0x38F)) return cp + 63;
  if (in(cp, 0x391, 0x3AB) && cp != 0x3A2) return cp + 0x20;
  if (in(cp, 0x400, 0x40F)) return cp + 0x50;
  if (in(cp, 0x410, 0x42F)) return cp + 0x20;
  if (in(cp, 0x460, 0x481) || in(cp, 0x48A, 0x4BF) || in(cp, 0x4D0, 0x52F)) {
    return is_even(cp) ? cp + 1 : cp;
  }
  if (cp == 0x4C0) return 0x4CF;
  if (in(cp, 0x4C1, 0x4CE)) return is_even(cp) ? cp : cp + 1;
  if (in(cp, 0x531, 0x556)) return cp + 0x30;
  if (in(cp, 0x1E00, 0x1E95) || in(cp, 0x1EA0, 0x1EFF)) return is_even(cp) ? cp + 1 : cp;
  if (in(cp, 0xFF21, 0xFF3A)) return cp + 0x20;
  return cp;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

std::string clean_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    const char32_t cp = decode_utf8(raw, pos);
    if (cp != kInvalid && is_word_char(cp)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      encode_utf8(to_lower(cp), out);
    } else {
      pending_space = true;
    }
  }
  return out;
}

TokenList tokenize(std::string_view cleaned) {
  TokenList tokens;
  std::size_t i = 0;
  while (i < cleaned.size()) {
    while (i < cleaned.size() && is_space(cleaned[i])) ++i;
    const std::size_t start = i;
    while (i < cleaned.size() && !is_space(cleaned[i])) ++i;
    if (i > start) tokens.emplace_back(cleaned.substr(start, i - start));
  }
  return tokens;
}

}  // namespace sentiment
