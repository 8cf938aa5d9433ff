#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sentiment/preprocess.hpp"
#include "sentiment/sparse.hpp"

namespace sentiment {

enum class VectorizerKind { bow, tfidf };

std::string_view to_string(VectorizerKind kind) noexcept;
/// Throws Error{usage} for anything but "bow" / "tfidf".
VectorizerKind parse_vectorizer_kind(std::string_view text);

/// tf of one document: n_{t,d} / sum_k n_{k,d} for the in-vocabulary terms.
/// The denominator counts every token of the document, in vocabulary or not.
struct TermFrequencies {
  std::map<std::size_t, double> tf;        // term index -> tf
  std::map<std::size_t, std::size_t> counts;  // term index -> n_{t,d}
  std::size_t total_tokens = 0;            // sum_k n_{k,d}
};

TermFrequencies term_frequency(const TokenList& doc, const Vocabulary& vocab);

/// idf_t = ln(N / df_t) over the fit documents, no smoothing.
struct IdfTable {
  std::size_t doc_count = 0;
  std::vector<std::size_t> df;
  std::vector<double> idf;
};

IdfTable compute_idf(std::span<const TokenList> docs, const Vocabulary& vocab);

/// Vocabulary (and idf table for TF-IDF) learned from training documents.
/// Immutable after fit.
class FittedVectorizer {
 public:
  FittedVectorizer(VectorizerKind kind, Vocabulary vocabulary, IdfTable idf);

  VectorizerKind kind() const noexcept { return kind_; }
  const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
  const IdfTable& idf() const noexcept { return idf_; }
  std::size_t dims() const noexcept { return vocabulary_.size(); }

  SparseVector transform(const TokenList& doc) const;

  nlohmann::json to_json() const;
  /// Throws Error{artifact} on a wrong format tag, version or shape.
  static FittedVectorizer from_json(const nlohmann::json& doc);

 private:
  VectorizerKind kind_;
  Vocabulary vocabulary_;
  IdfTable idf_;
};

/// Builds the vocabulary from `docs`; for TF-IDF also the idf table, which
/// requires at least one document (Error{training} otherwise).
FittedVectorizer fit(VectorizerKind kind, std::span<const TokenList> docs);

/// Binary presence: weight 1 per in-vocabulary term, regardless of count.
SparseVector transform_bow(const FittedVectorizer& v, const TokenList& doc);
/// tf * idf per in-vocabulary term; zero-idf terms are absent.
SparseVector transform_tfidf(const FittedVectorizer& v, const TokenList& doc);

std::vector<SparseVector> transform_corpus(const FittedVectorizer& v,
                                           std::span<const TokenList> docs);

inline constexpr int kVectorizerFormatVersion = 1;

}  // namespace sentiment
