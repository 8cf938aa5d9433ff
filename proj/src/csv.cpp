#include "sentiment/csv.hpp"

#include "sentiment/error.hpp"

namespace sentiment {

namespace {

[[noreturn]] void malformed(std::size_t line, std::string_view what) {
  throw Error(ErrorCategory::dataset,
              "malformed CSV quoting at line " + std::to_string(line) + ": " + std::string(what));
}

}  // namespace

CsvReader::CsvReader(std::string text) : text_(std::move(text)) {
  if (text_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
}

std::optional<CsvRecord> CsvReader::next() {
  if (pos_ >= text_.size()) return std::nullopt;

  CsvRecord record;
  record.line = line_;
  std::string field;
  const std::size_t n = text_.size();

  while (true) {
    // Start of a field.
    if (pos_ < n && text_[pos_] == '"') {
      ++pos_;
      const std::size_t open_line = line_;
      while (true) {
        if (pos_ >= n) malformed(open_line, "unterminated quoted field");
        const char ch = text_[pos_++];
        if (ch == '"') {
          if (pos_ < n && text_[pos_] == '"') {
            field.push_back('"');
            ++pos_;
          } else {
            break;
          }
        } else {
          if (ch == '\n') ++line_;
          field.push_back(ch);
        }
      }
      if (pos_ < n && text_[pos_] != ',' && text_[pos_] != '\n' && text_[pos_] != '\r') {
        malformed(line_, "unexpected character after closing quote");
      }
    } else {
      while (pos_ < n && text_[pos_] != ',' && text_[pos_] != '\n' && text_[pos_] != '\r') {
        if (text_[pos_] == '"') malformed(line_, "quote inside unquoted field");
        field.push_back(text_[pos_++]);
      }
    }

    record.fields.push_back(std::move(field));
    field.clear();

    if (pos_ >= n) break;
    const char sep = text_[pos_];
    if (sep == ',') {
      ++pos_;
      continue;
    }
    // Record end: LF or CRLF (a lone CR is also accepted).
    ++pos_;
    if (sep == '\r' && pos_ < n && text_[pos_] == '\n') ++pos_;
    ++line_;
    break;
  }
  return record;
}

}  // namespace sentiment
