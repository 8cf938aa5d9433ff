#include "sentiment/corpus.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include "sentiment/csv.hpp"
#include "sentiment/error.hpp"
#include "sentiment/random.hpp"

namespace sentiment {

namespace {

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

bool is_blank_record(const CsvRecord& r) {
  return r.fields.size() == 1 && r.fields.front().empty();
}

}  // namespace

Corpus parse_dataset(std::string csv_text, std::string source, std::string_view text_column,
                     std::string_view label_column) {
  CsvReader reader(std::move(csv_text));
  Corpus corpus;
  corpus.source = std::move(source);

  auto header = reader.next();
  if (!header) {
    throw Error(ErrorCategory::dataset, corpus.source + ": missing header row");
  }
  const auto text_idx = find_column(header->fields, text_column);
  const auto label_idx = find_column(header->fields, label_column);
  const auto id_idx = find_column(header->fields, kDefaultIdColumn);
  if (!text_idx) {
    throw Error(ErrorCategory::dataset,
                corpus.source + ": missing column '" + std::string(text_column) + "'");
  }
  if (!label_idx) {
    throw Error(ErrorCategory::dataset,
                corpus.source + ": missing column '" + std::string(label_column) + "'");
  }

  std::size_t row = 0;
  while (auto record = reader.next()) {
    if (is_blank_record(*record)) continue;
    ++row;
    auto where = [&] {
      return corpus.source + ": row " + std::to_string(row) + " (line " +
             std::to_string(record->line) + ")";
    };
    if (record->fields.size() != header->fields.size()) {
      throw Error(ErrorCategory::dataset, where() + ": expected " +
                                              std::to_string(header->fields.size()) +
                                              " fields, found " +
                                              std::to_string(record->fields.size()));
    }
    const auto label = parse_polarity(record->fields[*label_idx]);
    if (!label) {
      throw Error(ErrorCategory::dataset,
                  where() + ": unparseable label '" + record->fields[*label_idx] + "'");
    }
    if (record->fields[*text_idx].empty()) {
      throw Error(ErrorCategory::dataset, where() + ": empty text");
    }
    TweetRecord tweet;
    tweet.id = id_idx ? record->fields[*id_idx] : std::to_string(row);
    tweet.text = std::move(record->fields[*text_idx]);
    tweet.label = *label;
    corpus.records.push_back(std::move(tweet));
  }
  return corpus;
}

Corpus load_dataset(const std::filesystem::path& path, std::string_view text_column,
                    std::string_view label_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCategory::io, "cannot open dataset '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_dataset(std::move(buffer).str(), path.string(), text_column, label_column);
}

LabelCounts label_frequencies(const Corpus& corpus) noexcept {
  LabelCounts counts{};
  for (const auto& r : corpus.records) ++counts[class_index(r.label)];
  return counts;
}

std::size_t train_size(std::size_t n, double train_ratio) {
  // The epsilon keeps ratios such as 0.29 * 100 from flooring to 28.
  return static_cast<std::size_t>(std::floor(train_ratio * static_cast<double>(n) + 1e-9));
}

Split train_test_split(const Corpus& corpus, const SplitConfig& config) {
  if (!(config.train_ratio > 0.0 && config.train_ratio <= 1.0)) {
    throw Error(ErrorCategory::config, "train ratio must lie in (0, 1]");
  }
  if (corpus.empty()) {
    throw Error(ErrorCategory::dataset, "cannot split an empty corpus");
  }

  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(config.seed);
  rng.shuffle(std::span<std::size_t>(order));

  const std::size_t n_train = std::min(train_size(corpus.size(), config.train_ratio), corpus.size());
  Split split;
  split.train.source = corpus.source;
  split.test.source = corpus.source;
  split.train.records.reserve(n_train);
  split.test.records.reserve(corpus.size() - n_train);
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto& dst = i < n_train ? split.train.records : split.test.records;
    dst.push_back(corpus.records[order[i]]);
  }
  return split;
}

}  // namespace sentiment
