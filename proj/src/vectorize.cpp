#include "sentiment/vectorize.hpp"

#include <cmath>
#include <algorithm>
#include <stdexcept>

#include "sentiment/error.hpp"

namespace sentiment {

std::string_view to_string(VectorizerKind kind) noexcept {
  return kind == VectorizerKind::bow ? "bow" : "tfidf";
}

VectorizerKind parse_vectorizer_kind(std::string_view text) {
  if (text == "bow") return VectorizerKind::bow;
  if (text == "tfidf") return VectorizerKind::tfidf;
  throw Error(ErrorCategory::usage, "unknown vectorizer '" + std::string(text) + "'");
}

TermFrequencies term_frequency(const TokenList& doc, const Vocabulary& vocab) {
  TermFrequencies out;
  out.total_tokens = doc.size();
  for (const auto& token : doc) {
    if (auto idx = vocab.index_of(token)) ++out.counts[*idx];
  }
  for (const auto& [idx, n] : out.counts) {
    out.tf[idx] = static_cast<double>(n) / static_cast<double>(out.total_tokens);
  }
  return out;
}

IdfTable compute_idf(std::span<const TokenList> docs, const Vocabulary& vocab) {
  IdfTable table;
  table.doc_count = docs.size();
  table.df.assign(vocab.size(), 0);
  std::vector<std::size_t> last_seen(vocab.size(), SIZE_MAX);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& token : docs[d]) {
      const auto idx = vocab.index_of(token);
      if (!idx || last_seen[*idx] == d) continue;
      last_seen[*idx] = d;
      ++table.df[*idx];
    }
  }
  table.idf.resize(vocab.size());
  const auto n = static_cast<double>(table.doc_count);
  for (std::size_t t = 0; t < vocab.size(); ++t) {
    // df = N gives exactly log(1) = 0.
    table.idf[t] = table.df[t] == 0 ? 0.0 : std::log(n / static_cast<double>(table.df[t]));
  }
  return table;
}

FittedVectorizer::FittedVectorizer(VectorizerKind kind, Vocabulary vocabulary, IdfTable idf)
    : kind_(kind), vocabulary_(std::move(vocabulary)), idf_(std::move(idf)) {
  if (kind_ == VectorizerKind::tfidf &&
      (idf_.idf.size() != vocabulary_.size() || idf_.df.size() != vocabulary_.size())) {
    throw std::invalid_argument("idf table does not match vocabulary");
  }
}

FittedVectorizer fit(VectorizerKind kind, std::span<const TokenList> docs) {
  Vocabulary vocab = build_vocabulary(docs);
  IdfTable idf;
  if (kind == VectorizerKind::tfidf) {
    if (docs.empty()) {
      throw Error(ErrorCategory::training, "tf-idf needs at least one document to fit");
    }
    idf = compute_idf(docs, vocab);
  }
  return FittedVectorizer(kind, std::move(vocab), std::move(idf));
}

SparseVector transform_bow(const FittedVectorizer& v, const TokenList& doc) {
  if (v.kind() != VectorizerKind::bow) throw std::invalid_argument("vectorizer is not bow");
  std::vector<std::uint32_t> present;
  present.reserve(doc.size());
  for (const auto& token : doc) {
    if (auto idx = v.vocabulary().index_of(token)) present.push_back(static_cast<std::uint32_t>(*idx));
  }
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());
  SparseVector out(v.dims());
  for (auto idx : present) out.push_back(idx, 1.0);
  return out;
}

SparseVector transform_tfidf(const FittedVectorizer& v, const TokenList& doc) {
  if (v.kind() != VectorizerKind::tfidf) throw std::invalid_argument("vectorizer is not tfidf");
  const auto tf = term_frequency(doc, v.vocabulary());
  SparseVector out(v.dims());
  for (const auto& [idx, value] : tf.tf) {
    const double w = value * v.idf().idf[idx];
    if (w != 0.0) out.push_back(static_cast<std::uint32_t>(idx), w);
  }
  return out;
}

SparseVector FittedVectorizer::transform(const TokenList& doc) const {
  return kind_ == VectorizerKind::bow ? transform_bow(*this, doc) : transform_tfidf(*this, doc);
}

std::vector<SparseVector> transform_corpus(const FittedVectorizer& v,
                                           std::span<const TokenList> docs) {
  std::vector<SparseVector> out;
  out.reserve(docs.size());
  for (const auto& doc : docs) out.push_back(v.transform(doc));
  return out;
}

nlohmann::json FittedVectorizer::to_json() const {
  nlohmann::json doc;
  doc["format"] = "sentiment.vectorizer";
  doc["version"] = kVectorizerFormatVersion;
  doc["kind"] = std::string(to_string(kind_));
  doc["terms"] = vocabulary_.terms();
  if (kind_ == VectorizerKind::tfidf) {
    doc["doc_count"] = idf_.doc_count;
    doc["df"] = idf_.df;
    doc["idf"] = idf_.idf;
  }
  return doc;
}

FittedVectorizer FittedVectorizer::from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format") != "sentiment.vectorizer") {
      throw Error(ErrorCategory::artifact, "not a vectorizer artifact");
    }
    if (doc.at("version") != kVectorizerFormatVersion) {
      throw Error(ErrorCategory::artifact, "unsupported vectorizer artifact version");
    }
    const auto kind = parse_vectorizer_kind(doc.at("kind").get<std::string>());
    Vocabulary vocab(doc.at("terms").get<std::vector<std::string>>());
    IdfTable idf;
    if (kind == VectorizerKind::tfidf) {
      idf.doc_count = doc.at("doc_count").get<std::size_t>();
      idf.df = doc.at("df").get<std::vector<std::size_t>>();
      idf.idf = doc.at("idf").get<std::vector<double>>();
    }
    return FittedVectorizer(kind, std::move(vocab), std::move(idf));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCategory::artifact, std::string("invalid vectorizer artifact: ") + e.what());
  }
}

}  // namespace sentiment
