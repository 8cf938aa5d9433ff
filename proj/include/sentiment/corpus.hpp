#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sentiment/polarity.hpp"

namespace sentiment {

struct TweetRecord {
  std::string id;
  std::string text;
  Polarity label = Polarity::neutral;

  friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

/// Records in file row order. Immutable once loaded; share freely.
struct Corpus {
  std::vector<TweetRecord> records;
  std::string source;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
};

inline constexpr std::string_view kDefaultTextColumn = "text";
inline constexpr std::string_view kDefaultLabelColumn = "airline_sentiment";
inline constexpr std::string_view kDefaultIdColumn = "tweet_id";

/// Reads a headed RFC-4180 CSV. Only the text and label columns are
/// consumed; the id is taken from `tweet_id` when that column exists and
/// from the 1-based data row number otherwise.
///
/// Throws Error{io} for a missing file and Error{dataset} for a missing
/// column, an unparseable label or empty text (naming the data row), a
/// field-count mismatch, or malformed quoting.
Corpus load_dataset(const std::filesystem::path& path,
                    std::string_view text_column = kDefaultTextColumn,
                    std::string_view label_column = kDefaultLabelColumn);

/// Same as load_dataset over an in-memory CSV document.
Corpus parse_dataset(std::string csv_text, std::string source,
                     std::string_view text_column = kDefaultTextColumn,
                     std::string_view label_column = kDefaultLabelColumn);

using LabelCounts = std::array<std::size_t, kNumClasses>;

/// Counts per class in fixed class order; all three entries always present.
LabelCounts label_frequencies(const Corpus& corpus) noexcept;

struct SplitConfig {
  double train_ratio = 0.75;
  std::uint64_t seed = 42;
};

struct Split {
  Corpus train;
  Corpus test;
};

/// Unstratified seeded split: shuffles row indices with Rng(seed), then takes
/// the first floor(train_ratio * N) for train and the rest for test, both in
/// permuted order. Throws Error{dataset} on an empty corpus and Error{config}
/// for a ratio outside (0, 1].
Split train_test_split(const Corpus& corpus, const SplitConfig& config);

/// Number of training rows train_test_split produces for N records.
std::size_t train_size(std::size_t n, double train_ratio);

}  // namespace sentiment
