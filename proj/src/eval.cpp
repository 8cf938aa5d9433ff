#include "sentiment/eval.hpp"

#include <cstdio>
#include <sstream>

#include "sentiment/error.hpp"

namespace sentiment {

std::size_t ConfusionMatrix::total() const noexcept {
  std::size_t n = 0;
  for (const auto& row : counts) {
    for (auto v : row) n += v;
  }
  return n;
}

std::size_t ConfusionMatrix::support(std::size_t c) const noexcept {
  return counts[c][0] + counts[c][1] + counts[c][2];
}

std::size_t ConfusionMatrix::predicted(std::size_t c) const noexcept {
  return counts[0][c] + counts[1][c] + counts[2][c];
}

std::size_t ConfusionMatrix::false_positives(std::size_t c) const noexcept {
  return predicted(c) - counts[c][c];
}

std::size_t ConfusionMatrix::false_negatives(std::size_t c) const noexcept {
  return support(c) - counts[c][c];
}

ConfusionMatrix confusion_matrix(std::span<const Polarity> truth, std::span<const Polarity> pred) {
  if (truth.size() != pred.size()) {
    throw Error(ErrorCategory::evaluation, "truth and prediction lengths differ");
  }
  if (truth.empty()) throw Error(ErrorCategory::evaluation, "nothing to evaluate");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) ++cm.counts[class_index(truth[i])][class_index(pred[i])];
  return cm;
}

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

PerClassMetrics per_class_metrics(const ConfusionMatrix& cm) noexcept {
  PerClassMetrics out{};
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const std::size_t tp = cm.true_positives(c);
    auto& m = out[c];
    m.precision = ratio(tp, tp + cm.false_positives(c));
    m.recall = ratio(tp, tp + cm.false_negatives(c));
    const double pr = m.precision + m.recall;
    m.f1 = pr == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / pr;
  }
  return out;
}

ClassMetrics weighted_metrics(const PerClassMetrics& per_class,
                              const std::array<std::size_t, kNumClasses>& support) {
  const std::size_t n = support[0] + support[1] + support[2];
  if (n == 0) throw Error(ErrorCategory::evaluation, "weighted metrics need nonzero support");
  ClassMetrics out;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const double w = static_cast<double>(support[c]) / static_cast<double>(n);
    out.precision += w * per_class[c].precision;
    out.recall += w * per_class[c].recall;
    out.f1 += w * per_class[c].f1;
  }
  return out;
}

double accuracy(const ConfusionMatrix& cm) {
  const std::size_t n = cm.total();
  if (n == 0) throw Error(ErrorCategory::evaluation, "accuracy of an empty matrix");
  return ratio(cm.counts[0][0] + cm.counts[1][1] + cm.counts[2][2], n);
}

MetricsReport make_report(std::span<const Polarity> truth, std::span<const Polarity> pred,
                          ReportMetadata metadata) {
  MetricsReport r;
  r.confusion = confusion_matrix(truth, pred);
  r.accuracy = accuracy(r.confusion);
  r.per_class = per_class_metrics(r.confusion);
  for (std::size_t c = 0; c < kNumClasses; ++c) r.support[c] = r.confusion.support(c);
  r.weighted = weighted_metrics(r.per_class, r.support);
  r.metadata = std::move(metadata);
  return r;
}

MetricsReport evaluate(const TrainedModel& model, const FittedVectorizer& vectorizer,
                       const Preprocessor& preprocessor, const Corpus& test,
                       ReportMetadata metadata) {
  if (model.dims() != vectorizer.dims()) {
    throw Error(ErrorCategory::dimension,
                "model expects " + std::to_string(model.dims()) + " dims, vectorizer produces " +
                    std::to_string(vectorizer.dims()));
  }
  if (test.empty()) throw Error(ErrorCategory::evaluation, "empty test set");
  std::vector<Polarity> truth;
  std::vector<Polarity> pred;
  truth.reserve(test.size());
  pred.reserve(test.size());
  for (const auto& record : test.records) {
    truth.push_back(record.label);
    pred.push_back(model.predict(vectorizer.transform(preprocessor(record.text))));
  }
  return make_report(truth, pred, std::move(metadata));
}

nlohmann::json to_json(const MetricsReport& r) {
  using nlohmann::json;
  json per_class = json::object();
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    per_class[std::string(to_string(class_at(c)))] = {{"precision", r.per_class[c].precision},
                                                      {"recall", r.per_class[c].recall},
                                                      {"f1", r.per_class[c].f1},
                                                      {"support", r.support[c]}};
  }
  json matrix = json::array();
  for (const auto& row : r.confusion.counts) matrix.push_back(row);
  return json{
      {"metadata",
       {{"model", r.metadata.model},
        {"vectorizer", r.metadata.vectorizer},
        {"seed", r.metadata.seed},
        {"split_ratio", r.metadata.split_ratio},
        {"dataset", r.metadata.dataset}}},
      {"accuracy", r.accuracy},
      {"weighted", {{"precision", r.weighted.precision}, {"recall", r.weighted.recall}, {"f1", r.weighted.f1}}},
      {"per_class", per_class},
      {"confusion_matrix", {{"classes", {"negative", "neutral", "positive"}}, {"counts", matrix}}},
  };
}

std::string render_table(const MetricsReport& r) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "model=%s vectorizer=%s seed=%llu split=%.2f\n",
                r.metadata.model.c_str(), r.metadata.vectorizer.c_str(),
                static_cast<unsigned long long>(r.metadata.seed), r.metadata.split_ratio);
  out << buf;
  std::snprintf(buf, sizeof buf, "accuracy %.2f  precision %.2f  recall %.2f  f1 %.2f (weighted)\n\n",
                r.accuracy, r.weighted.precision, r.weighted.recall, r.weighted.f1);
  out << buf;
  out << "class      precision  recall  f1    support\n";
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    std::snprintf(buf, sizeof buf, "%-10s %9.2f  %6.2f  %4.2f  %7zu\n",
                  std::string(to_string(class_at(c))).c_str(), r.per_class[c].precision,
                  r.per_class[c].recall, r.per_class[c].f1, r.support[c]);
    out << buf;
  }
  out << "\nconfusion (rows true, columns predicted)\n";
  out << "           negative   neutral  positive\n";
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    std::snprintf(buf, sizeof buf, "%-10s %8zu  %8zu  %8zu\n",
                  std::string(to_string(class_at(c))).c_str(), r.confusion.counts[c][0],
                  r.confusion.counts[c][1], r.confusion.counts[c][2]);
    out << buf;
  }
  return out.str();
}

}  // namespace sentiment
