#include "sentiment/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sentiment/error.hpp"

namespace sentiment {

using nlohmann::json;

std::string_view to_string(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::table: return "table";
  }
  return "?";
}

OutputFormat parse_output_format(std::string_view text) {
  for (auto f : {OutputFormat::json, OutputFormat::csv, OutputFormat::table}) {
    if (text == to_string(f)) return f;
  }
  throw Error(ErrorCategory::usage, "unknown output format '" + std::string(text) + "'");
}

std::string display_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::svm: return "Support Vector Machine (SVM)";
    case ModelKind::mnb: return "Multinomial Naive Bayes";
    case ModelKind::rf: return "Random Forest";
    case ModelKind::logreg: return "Logistic Regression";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Config

void ExperimentConfig::merge_json(const json& doc) {
  try {
    if (doc.contains("dataset")) dataset = doc.at("dataset").get<std::string>();
    if (doc.contains("text_column")) text_column = doc.at("text_column").get<std::string>();
    if (doc.contains("label_column")) label_column = doc.at("label_column").get<std::string>();
    if (doc.contains("split_ratio")) split.train_ratio = doc.at("split_ratio").get<double>();
    if (doc.contains("seed")) {
      split.seed = doc.at("seed").get<std::uint64_t>();
      hyperparameters.seed = split.seed;
    }
    // "bundled" is what to_json writes for the compiled-in lists.
    auto optional_path = [&](const char* key, std::optional<std::filesystem::path>& slot) {
      if (!doc.contains(key)) return;
      const auto value = doc.at(key).get<std::string>();
      if (value == "bundled") slot.reset();
      else slot = value;
    };
    optional_path("stopwords", stopwords);
    optional_path("lemma_exceptions", lemma_exceptions);
    if (doc.contains("vectorizers")) {
      vectorizers.clear();
      for (const auto& v : doc.at("vectorizers")) vectorizers.push_back(parse_vectorizer_kind(v.get<std::string>()));
    }
    if (doc.contains("models")) {
      models.clear();
      for (const auto& m : doc.at("models")) models.push_back(parse_model_kind(m.get<std::string>()));
    }
    if (doc.contains("hyperparameters")) {
      json merged = sentiment::to_json(hyperparameters);
      merged.merge_patch(doc.at("hyperparameters"));
      const auto threads = hyperparameters.forest.threads;
      hyperparameters = hyperparameters_from_json(merged);
      hyperparameters.forest.threads = threads;
    }
    if (doc.contains("out_dir")) out_dir = doc.at("out_dir").get<std::string>();
    if (doc.contains("formats")) {
      formats.clear();
      for (const auto& f : doc.at("formats")) formats.push_back(parse_output_format(f.get<std::string>()));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCategory::config, std::string("invalid config: ") + e.what());
  }
}

json ExperimentConfig::to_json() const {
  json vs = json::array();
  for (auto v : vectorizers) vs.push_back(std::string(to_string(v)));
  json ms = json::array();
  for (auto m : models) ms.push_back(std::string(to_string(m)));
  return json{
      {"dataset", dataset.string()},
      {"text_column", text_column},
      {"label_column", label_column},
      {"split_ratio", split.train_ratio},
      {"seed", split.seed},
      {"stopwords", stopwords ? json(stopwords->string()) : json("bundled")},
      {"lemma_exceptions", lemma_exceptions ? json(lemma_exceptions->string()) : json("bundled")},
      {"vectorizers", vs},
      {"models", ms},
      {"hyperparameters", sentiment::to_json(hyperparameters)},
  };
}

void validate(const ExperimentConfig& config) {
  auto require_file = [](const std::filesystem::path& p, std::string_view what) {
    if (!std::filesystem::is_regular_file(p)) {
      throw Error(ErrorCategory::config, std::string(what) + " '" + p.string() + "' does not exist");
    }
  };
  if (config.dataset.empty()) throw Error(ErrorCategory::config, "no dataset given (--data)");
  require_file(config.dataset, "dataset");
  if (config.stopwords) require_file(*config.stopwords, "stop-word file");
  if (config.lemma_exceptions) require_file(*config.lemma_exceptions, "lemma exceptions file");
  if (!(config.split.train_ratio > 0.0 && config.split.train_ratio < 1.0)) {
    throw Error(ErrorCategory::config, "split ratio must lie in (0, 1)");
  }
  if (config.vectorizers.empty()) throw Error(ErrorCategory::config, "no vectorizer selected");
  if (config.models.empty()) throw Error(ErrorCategory::config, "no model selected");
}

Preprocessor make_preprocessor(const ExperimentConfig& config) {
  StopWordList stoplist = config.stopwords ? StopWordList::load(*config.stopwords) : StopWordList::english();
  Lemmatizer lemmatizer =
      config.lemma_exceptions ? Lemmatizer::with_exceptions_file(*config.lemma_exceptions) : Lemmatizer();
  return Preprocessor(std::move(stoplist), std::move(lemmatizer));
}

PreparedData prepare(const ExperimentConfig& config, const Preprocessor& preprocessor) {
  PreparedData data;
  data.corpus = load_dataset(config.dataset, config.text_column, config.label_column);
  if (data.corpus.empty()) throw Error(ErrorCategory::dataset, "empty corpus");
  data.split = train_test_split(data.corpus, config.split);
  data.train_docs.reserve(data.split.train.size());
  for (const auto& r : data.split.train.records) data.train_docs.push_back(preprocessor(r.text));
  data.test_docs.reserve(data.split.test.size());
  for (const auto& r : data.split.test.records) data.test_docs.push_back(preprocessor(r.text));
  return data;
}

LabeledMatrix to_labeled_matrix(const FittedVectorizer& vectorizer, std::span<const TokenList> docs,
                                const Corpus& labels) {
  LabeledMatrix m;
  m.dims = vectorizer.dims();
  m.vectors = transform_corpus(vectorizer, docs);
  m.labels.reserve(labels.size());
  for (const auto& r : labels.records) m.labels.push_back(r.label);
  return m;
}

// ---------------------------------------------------------------------------
// Comparison grid

std::string digest_ids(std::span<const std::string> ids) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&](unsigned char byte) {
    h ^= byte;
    h *= 0x100000001b3ull;
  };
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) mix('\n');
    for (unsigned char ch : ids[i]) mix(ch);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

ReportMetadata metadata_for(const ExperimentConfig& config, ModelKind m, VectorizerKind v) {
  return ReportMetadata{std::string(to_string(m)), std::string(to_string(v)), config.split.seed,
                        config.split.train_ratio, config.dataset.string()};
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

}  // namespace

ComparisonTable run_comparison(const ExperimentConfig& config) {
  validate(config);
  const Preprocessor preprocessor = make_preprocessor(config);
  const PreparedData data = prepare(config, preprocessor);
  if (data.split.test.empty()) throw Error(ErrorCategory::config, "split leaves no test rows");

  std::vector<std::string> test_ids;
  std::vector<Polarity> truth;
  for (const auto& r : data.split.test.records) {
    test_ids.push_back(r.id);
    truth.push_back(r.label);
  }

  ComparisonTable table;
  table.config = config.to_json();
  for (const auto vk : config.vectorizers) {
    const FittedVectorizer vectorizer = fit(vk, data.train_docs);
    const LabeledMatrix train_rows = to_labeled_matrix(vectorizer, data.train_docs, data.split.train);
    const auto test_vectors = transform_corpus(vectorizer, data.test_docs);
    for (const auto mk : config.models) {
      TrainedModel model = [&] {
        try {
          return train(mk, train_rows, config.hyperparameters);
        } catch (const Error& e) {
          throw Error(e.category(), std::string(to_string(mk)) + "/" + std::string(to_string(vk)) +
                                        ": " + e.what());
        }
      }();
      std::vector<Polarity> pred;
      pred.reserve(test_vectors.size());
      for (const auto& v : test_vectors) pred.push_back(model.predict(v));
      table.cells.push_back(
          {mk, vk, make_report(truth, pred, metadata_for(config, mk, vk)), test_ids, false});
    }
  }

  double best = 0.0;
  for (const auto& c : table.cells) best = std::max(best, round2(c.report.accuracy));
  for (auto& c : table.cells) c.best = round2(c.report.accuracy) == best;
  return table;
}

json to_json(const ComparisonTable& table) {
  json rows = json::array();
  json reports = json::array();
  for (const auto& c : table.cells) {
    rows.push_back({{"model", std::string(to_string(c.model))},
                    {"vectorizer", std::string(to_string(c.vectorizer))},
                    {"accuracy", c.report.accuracy},
                    {"precision", c.report.weighted.precision},
                    {"recall", c.report.weighted.recall},
                    {"f1", c.report.weighted.f1},
                    {"best", c.best},
                    {"test_size", c.test_ids.size()},
                    {"test_ids_digest", digest_ids(c.test_ids)}});
    reports.push_back(to_json(c.report));
  }
  return json{{"format", "sentiment.comparison"},
              {"version", 1},
              {"config", table.config},
              {"rows", rows},
              {"reports", reports}};
}

std::string to_csv(const ComparisonTable& table) {
  std::ostringstream out;
  out << "model,vectorizer,accuracy,precision,recall,f1,best\n";
  char buf[128];
  for (const auto& c : table.cells) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g,%.17g,%.17g,%d\n",
                  std::string(to_string(c.model)).c_str(), std::string(to_string(c.vectorizer)).c_str(),
                  c.report.accuracy, c.report.weighted.precision, c.report.weighted.recall,
                  c.report.weighted.f1, c.best ? 1 : 0);
    out << buf;
  }
  return out.str();
}

std::string render_table(const ComparisonTable& table) {
  std::ostringstream out;
  char buf[160];
  for (const auto vk : {VectorizerKind::bow, VectorizerKind::tfidf}) {
    bool any = false;
    for (const auto& c : table.cells) any |= c.vectorizer == vk;
    if (!any) continue;
    out << "Classification algorithms with "
        << (vk == VectorizerKind::bow ? "Bag-of-Words (BoW)" : "TF-IDF") << "\n";
    out << "Algorithm                       Accuracy  Precision  Recall  F1-Score\n";
    for (const auto& c : table.cells) {
      if (c.vectorizer != vk) continue;
      std::snprintf(buf, sizeof buf, "%-30s %s%.2f     %.2f     %.2f     %.2f\n",
                    display_name(c.model).c_str(), c.best ? "*" : " ", c.report.accuracy,
                    c.report.weighted.precision, c.report.weighted.recall, c.report.weighted.f1);
      out << buf;
    }
    out << "\n";
  }

  out << "Comparison                      BoW Acc  BoW F1  TF-IDF Acc  TF-IDF F1\n";
  for (const auto mk : kAllModels) {
    const ComparisonCell* bow = nullptr;
    const ComparisonCell* tfidf = nullptr;
    for (const auto& c : table.cells) {
      if (c.model != mk) continue;
      (c.vectorizer == VectorizerKind::bow ? bow : tfidf) = &c;
    }
    if (!bow && !tfidf) continue;
    auto cell = [](const ComparisonCell* c, bool acc) {
      char b[16];
      if (!c) return std::string("   - ");
      std::snprintf(b, sizeof b, "%.2f", acc ? c->report.accuracy : c->report.weighted.f1);
      return std::string(b);
    };
    std::snprintf(buf, sizeof buf, "%-30s  %s     %s    %s        %s\n", display_name(mk).c_str(),
                  cell(bow, true).c_str(), cell(bow, false).c_str(), cell(tfidf, true).c_str(),
                  cell(tfidf, false).c_str());
    out << buf;
  }
  out << "\n* best accuracy (two decimals); precision, recall and F1 are support-weighted.\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Files

void write_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCategory::io, "cannot create '" + path.parent_path().string() + "'");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCategory::io, "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCategory::io, "cannot write '" + path.string() + "'");
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::artifact, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCategory::artifact, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

namespace {

bool wants(const ExperimentConfig& config, OutputFormat f) {
  return std::find(config.formats.begin(), config.formats.end(), f) != config.formats.end();
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

// ---------------------------------------------------------------------------
// Commands

StatsResult run_stats(const ExperimentConfig& config) {
  if (config.dataset.empty()) throw Error(ErrorCategory::config, "no dataset given (--data)");
  const Corpus corpus = load_dataset(config.dataset, config.text_column, config.label_column);
  if (corpus.empty()) throw Error(ErrorCategory::dataset, corpus.source + ": empty corpus");

  StatsResult stats;
  stats.counts = label_frequencies(corpus);
  stats.total = corpus.size();

  if (wants(config, OutputFormat::json)) {
    json doc{{"dataset", config.dataset.string()}, {"total", stats.total}};
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      doc["counts"][std::string(to_string(class_at(c)))] = stats.counts[c];
    }
    const auto path = config.out_dir / "label_frequencies.json";
    write_file(path, dump(doc));
    stats.written.push_back(path);
  }
  if (wants(config, OutputFormat::csv)) {
    std::ostringstream csv;
    csv << "label,count,percent\n";
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      char buf[64];
      std::snprintf(buf, sizeof buf, ",%zu,%.2f\n", stats.counts[c],
                    100.0 * static_cast<double>(stats.counts[c]) / static_cast<double>(stats.total));
      csv << to_string(class_at(c)) << buf;
    }
    const auto path = config.out_dir / "label_frequencies.csv";
    write_file(path, csv.str());
    stats.written.push_back(path);
  }
  if (wants(config, OutputFormat::table)) {
    const auto path = config.out_dir / "label_frequencies.txt";
    write_file(path, render_stats(stats));
    stats.written.push_back(path);
  }
  return stats;
}

std::string render_stats(const StatsResult& stats) {
  std::ostringstream out;
  char buf[96];
  out << "label      count  percent\n";
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    std::snprintf(buf, sizeof buf, "%-9s %6zu  %6.2f%%\n", std::string(to_string(class_at(c))).c_str(),
                  stats.counts[c],
                  100.0 * static_cast<double>(stats.counts[c]) / static_cast<double>(stats.total));
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "%-9s %6zu\n", "total", stats.total);
  out << buf;
  return out.str();
}

TrainResult run_train(const ExperimentConfig& config, ModelKind model_kind, VectorizerKind vectorizer_kind) {
  validate(config);
  const Preprocessor preprocessor = make_preprocessor(config);
  const PreparedData data = prepare(config, preprocessor);
  const FittedVectorizer vectorizer = fit(vectorizer_kind, data.train_docs);
  const LabeledMatrix matrix = to_labeled_matrix(vectorizer, data.train_docs, data.split.train);
  const TrainedModel model = [&] {
    try {
      return train(model_kind, matrix, config.hyperparameters);
    } catch (const Error& e) {
      throw Error(e.category(), std::string(to_string(model_kind)) + ": " + e.what());
    }
  }();

  TrainResult result;
  const std::string v = std::string(to_string(vectorizer_kind));
  result.vectorizer_path = config.out_dir / ("vectorizer-" + v + ".json");
  result.model_path = config.out_dir / ("model-" + std::string(to_string(model_kind)) + "-" + v + ".json");
  write_file(result.vectorizer_path, dump(vectorizer.to_json()));
  write_file(result.model_path, dump(model.to_json()));
  return result;
}

EvaluateResult run_evaluate(const ExperimentConfig& config, const std::filesystem::path& model_path,
                            const std::filesystem::path& vectorizer_path) {
  validate(config);
  const TrainedModel model = TrainedModel::from_json(read_json_file(model_path));
  const FittedVectorizer vectorizer = FittedVectorizer::from_json(read_json_file(vectorizer_path));
  if (model.dims() != vectorizer.dims()) {
    throw Error(ErrorCategory::dimension,
                "model '" + model_path.string() + "' expects " + std::to_string(model.dims()) +
                    " dims but vectorizer '" + vectorizer_path.string() + "' produces " +
                    std::to_string(vectorizer.dims()));
  }
  const Preprocessor preprocessor = make_preprocessor(config);
  const Corpus corpus = load_dataset(config.dataset, config.text_column, config.label_column);
  if (corpus.empty()) throw Error(ErrorCategory::dataset, "empty corpus");
  const Split split = train_test_split(corpus, config.split);

  EvaluateResult result;
  result.report = evaluate(model, vectorizer, preprocessor, split.test,
                           metadata_for(config, model.kind(), vectorizer.kind()));
  const std::string stem = "report-" + std::string(to_string(model.kind())) + "-" +
                           std::string(to_string(vectorizer.kind()));
  if (wants(config, OutputFormat::json)) {
    const auto path = config.out_dir / (stem + ".json");
    write_file(path, dump(to_json(result.report)));
    result.written.push_back(path);
  }
  if (wants(config, OutputFormat::table)) {
    const auto path = config.out_dir / (stem + ".txt");
    write_file(path, render_table(result.report));
    result.written.push_back(path);
  }
  return result;
}

CompareResult run_compare(const ExperimentConfig& config) {
  CompareResult result;
  result.table = run_comparison(config);
  if (wants(config, OutputFormat::json)) {
    const auto path = config.out_dir / "comparison.json";
    write_file(path, dump(to_json(result.table)));
    result.written.push_back(path);
  }
  if (wants(config, OutputFormat::csv)) {
    const auto path = config.out_dir / "comparison.csv";
    write_file(path, to_csv(result.table));
    result.written.push_back(path);
  }
  if (wants(config, OutputFormat::table)) {
    const auto path = config.out_dir / "comparison.txt";
    write_file(path, render_table(result.table));
    result.written.push_back(path);
  }
  return result;
}

}  // namespace sentiment
