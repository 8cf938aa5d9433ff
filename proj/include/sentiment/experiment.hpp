#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sentiment/corpus.hpp"
#include "sentiment/eval.hpp"
#include "sentiment/models.hpp"
#include "sentiment/preprocess.hpp"
#include "sentiment/vectorize.hpp"

namespace sentiment {

enum class OutputFormat { json, csv, table };

std::string_view to_string(OutputFormat f) noexcept;
OutputFormat parse_output_format(std::string_view text);

/// Everything a run depends on. Defaults reproduce the full comparison grid
/// from just a dataset path.
struct ExperimentConfig {
  std::filesystem::path dataset;
  std::string text_column{kDefaultTextColumn};
  std::string label_column{kDefaultLabelColumn};
  SplitConfig split;                                   // 0.75, seed 42
  std::optional<std::filesystem::path> stopwords;      // bundled list when unset
  std::optional<std::filesystem::path> lemma_exceptions;  // bundled list when unset
  std::vector<VectorizerKind> vectorizers{VectorizerKind::bow, VectorizerKind::tfidf};
  std::vector<ModelKind> models{kAllModels.begin(), kAllModels.end()};
  Hyperparameters hyperparameters;                     // seed follows split.seed
  std::filesystem::path out_dir{"out"};
  std::vector<OutputFormat> formats{OutputFormat::json, OutputFormat::csv, OutputFormat::table};

  /// Overlays the keys present in `doc` onto this config.
  void merge_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};

/// Throws Error{config} unless referenced files exist, the ratio lies in
/// (0, 1) and at least one vectorizer and one model are selected.
void validate(const ExperimentConfig& config);

Preprocessor make_preprocessor(const ExperimentConfig& config);

/// Loaded corpus, its split and preprocessed token lists for both halves.
struct PreparedData {
  Corpus corpus;
  Split split;
  std::vector<TokenList> train_docs;
  std::vector<TokenList> test_docs;
};

PreparedData prepare(const ExperimentConfig& config, const Preprocessor& preprocessor);

LabeledMatrix to_labeled_matrix(const FittedVectorizer& vectorizer,
                                std::span<const TokenList> docs, const Corpus& labels);

struct ComparisonCell {
  ModelKind model;
  VectorizerKind vectorizer;
  MetricsReport report;
  std::vector<std::string> test_ids;  // order the test rows were evaluated in
  bool best = false;                  // ties the best accuracy at two decimals
};

struct ComparisonTable {
  std::vector<ComparisonCell> cells;
  nlohmann::json config;
};

/// Trains and evaluates every (vectorizer, model) pair on one shared split.
ComparisonTable run_comparison(const ExperimentConfig& config);

nlohmann::json to_json(const ComparisonTable& table);
std::string to_csv(const ComparisonTable& table);
std::string render_table(const ComparisonTable& table);

/// FNV-1a 64 over the ids joined by '\n', as 16 hex digits.
std::string digest_ids(std::span<const std::string> ids);

/// Writes `text` to `path` atomically enough for our purposes (truncate + write).
void write_file(const std::filesystem::path& path, std::string_view text);
nlohmann::json read_json_file(const std::filesystem::path& path);

std::string display_name(ModelKind kind);

// ---------------------------------------------------------------------------
// Commands. Each writes its outputs under config.out_dir in the requested
// formats and returns the written paths alongside the result.

struct StatsResult {
  LabelCounts counts{};
  std::size_t total = 0;
  std::vector<std::filesystem::path> written;
};

/// Label frequencies of the whole dataset. Error{dataset} on an empty corpus.
StatsResult run_stats(const ExperimentConfig& config);
std::string render_stats(const StatsResult& stats);

struct TrainResult {
  std::filesystem::path model_path;
  std::filesystem::path vectorizer_path;
};

/// Fits the vectorizer and trains one model on the training split.
TrainResult run_train(const ExperimentConfig& config, ModelKind model, VectorizerKind vectorizer);

struct EvaluateResult {
  MetricsReport report;
  std::vector<std::filesystem::path> written;
};

/// Re-derives the split from the config and scores the artifacts on its test half.
EvaluateResult run_evaluate(const ExperimentConfig& config, const std::filesystem::path& model_path,
                            const std::filesystem::path& vectorizer_path);

struct CompareResult {
  ComparisonTable table;
  std::vector<std::filesystem::path> written;
};

CompareResult run_compare(const ExperimentConfig& config);

}  // namespace sentiment
