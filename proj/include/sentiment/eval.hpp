#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include <json.hpp>

#include "sentiment/corpus.hpp"
#include "sentiment/models.hpp"
#include "sentiment/polarity.hpp"
#include "sentiment/preprocess.hpp"
#include "sentiment/vectorize.hpp"

namespace sentiment {

/// counts[true][predicted] in fixed class order.
struct ConfusionMatrix {
  std::array<std::array<std::size_t, kNumClasses>, kNumClasses> counts{};

  std::size_t total() const noexcept;
  std::size_t true_positives(std::size_t c) const noexcept { return counts[c][c]; }
  std::size_t false_positives(std::size_t c) const noexcept;
  std::size_t false_negatives(std::size_t c) const noexcept;
  std::size_t support(std::size_t c) const noexcept;    // row sum
  std::size_t predicted(std::size_t c) const noexcept;  // column sum
};

/// Throws Error{evaluation} on length mismatch or empty input.
ConfusionMatrix confusion_matrix(std::span<const Polarity> truth, std::span<const Polarity> pred);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

using PerClassMetrics = std::array<ClassMetrics, kNumClasses>;

/// Precision, recall and F1 per class; every 0/0 is taken as 0.
PerClassMetrics per_class_metrics(const ConfusionMatrix& cm) noexcept;

/// Support-weighted means. Throws Error{evaluation} when supports sum to 0.
ClassMetrics weighted_metrics(const PerClassMetrics& per_class,
                              const std::array<std::size_t, kNumClasses>& support);

/// trace / total. Throws Error{evaluation} on an empty matrix.
double accuracy(const ConfusionMatrix& cm);

struct ReportMetadata {
  std::string model;
  std::string vectorizer;
  std::uint64_t seed = 0;
  double split_ratio = 0.0;
  std::string dataset;
};

struct MetricsReport {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  PerClassMetrics per_class{};
  std::array<std::size_t, kNumClasses> support{};
  ClassMetrics weighted;
  ReportMetadata metadata;
};

MetricsReport make_report(std::span<const Polarity> truth, std::span<const Polarity> pred,
                          ReportMetadata metadata);

/// Preprocesses and vectorizes the test corpus, predicts every record and
/// assembles the report. Throws Error{dimension} when model and vectorizer
/// disagree on dims, Error{evaluation} for an empty test set.
MetricsReport evaluate(const TrainedModel& model, const FittedVectorizer& vectorizer,
                       const Preprocessor& preprocessor, const Corpus& test,
                       ReportMetadata metadata);

nlohmann::json to_json(const MetricsReport& report);
/// Two-decimal text rendering: summary line, per-class table, confusion matrix.
std::string render_table(const MetricsReport& report);

}  // namespace sentiment
