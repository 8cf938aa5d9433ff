#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sentiment {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line where the record starts
};

/// RFC-4180 reader over an in-memory buffer: comma separated, CRLF or LF
/// record ends, double-quoted fields with "" escapes and embedded newlines.
/// A leading UTF-8 byte-order mark is skipped. Quoting violations throw
/// Error{dataset} naming the line.
class CsvReader {
 public:
  explicit CsvReader(std::string text);

  /// Next record, or nullopt at end of input. A final empty line is not a record.
  std::optional<CsvRecord> next();

 private:
  std::string text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace sentiment
