// Command-line front end: stats, train, evaluate, compare.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>

#include "sentiment/error.hpp"
#include "sentiment/experiment.hpp"
#include "sentiment/kernels.hpp"

namespace {

using sentiment::Error;
using sentiment::ErrorCategory;
using sentiment::ExperimentConfig;

// Raw flag values; applied on top of the (optional) JSON config file.
struct Flags {
  std::string config_file;
  std::optional<std::string> data, text_col, label_col, stopwords, lemma_exceptions, out_dir;
  std::optional<double> split_ratio;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> vectorizers, models, formats;
  std::optional<double> nb_alpha, lr_rate, lr_l2, svm_lambda;
  std::optional<std::size_t> lr_epochs, lr_batch, svm_epochs, rf_trees, rf_max_depth, rf_max_features;
  bool rf_no_bootstrap = false;
  std::optional<std::size_t> threads;
  std::string kernels = "auto";
  std::string model_artifact, vectorizer_artifact;
};

void add_common(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config_file, "JSON experiment config; flags override it");
  cmd.add_option("--data", f.data, "Dataset CSV");
  cmd.add_option("--text-col", f.text_col, "Text column (default: text)");
  cmd.add_option("--label-col", f.label_col, "Label column (default: airline_sentiment)");
  cmd.add_option("--out-dir", f.out_dir, "Output directory (default: out)");
  cmd.add_option("--format", f.formats, "Output formats: json, csv, table (repeatable)")
      ->check(CLI::IsMember({"json", "csv", "table"}));
}

void add_pipeline(CLI::App& cmd, Flags& f) {
  cmd.add_option("--split-ratio", f.split_ratio, "Training fraction (default: 0.75)");
  cmd.add_option("--seed", f.seed, "Seed for the split and every model (default: 42)");
  cmd.add_option("--stopwords", f.stopwords, "Stop-word list file (default: bundled English list)");
  cmd.add_option("--lemma-exceptions", f.lemma_exceptions, "Lemma exceptions file (default: bundled)");
  cmd.add_option("--nb-alpha", f.nb_alpha, "Naive Bayes smoothing (default: 1.0)");
  cmd.add_option("--lr-rate", f.lr_rate, "Logistic regression learning rate (default: 0.5)");
  cmd.add_option("--lr-epochs", f.lr_epochs, "Logistic regression epochs (default: 50)");
  cmd.add_option("--lr-batch", f.lr_batch, "Logistic regression batch size (default: 64)");
  cmd.add_option("--lr-l2", f.lr_l2, "Logistic regression L2 strength (default: 1e-4)");
  cmd.add_option("--svm-lambda", f.svm_lambda, "SVM regularization (default: 1e-4)");
  cmd.add_option("--svm-epochs", f.svm_epochs, "SVM epochs (default: 50)");
  cmd.add_option("--rf-trees", f.rf_trees, "Random forest tree count (default: 100)");
  cmd.add_option("--rf-max-depth", f.rf_max_depth, "Random forest max depth, 0 = unlimited (default: 0)");
  cmd.add_option("--rf-max-features", f.rf_max_features, "Features per split, 0 = ceil(sqrt(dims))");
  cmd.add_flag("--rf-no-bootstrap", f.rf_no_bootstrap, "Grow every tree on the full training set");
  cmd.add_option("--threads", f.threads, "Worker threads for forest training (results unaffected)");
}

ExperimentConfig build_config(const Flags& f) {
  ExperimentConfig config;
  if (!f.config_file.empty()) config.merge_json(sentiment::read_json_file(f.config_file));

  if (f.data) config.dataset = *f.data;
  if (f.text_col) config.text_column = *f.text_col;
  if (f.label_col) config.label_column = *f.label_col;
  if (f.out_dir) config.out_dir = *f.out_dir;
  if (f.split_ratio) config.split.train_ratio = *f.split_ratio;
  if (f.seed) {
    config.split.seed = *f.seed;
    config.hyperparameters.seed = *f.seed;
  }
  if (f.stopwords) config.stopwords = *f.stopwords;
  if (f.lemma_exceptions) config.lemma_exceptions = *f.lemma_exceptions;
  if (!f.vectorizers.empty()) {
    config.vectorizers.clear();
    for (const auto& v : f.vectorizers) config.vectorizers.push_back(sentiment::parse_vectorizer_kind(v));
  }
  if (!f.models.empty()) {
    config.models.clear();
    for (const auto& m : f.models) config.models.push_back(sentiment::parse_model_kind(m));
  }
  if (!f.formats.empty()) {
    config.formats.clear();
    for (const auto& fmt : f.formats) config.formats.push_back(sentiment::parse_output_format(fmt));
  }

  auto& hp = config.hyperparameters;
  if (f.nb_alpha) hp.nb.alpha = *f.nb_alpha;
  if (f.lr_rate) hp.logreg.learning_rate = *f.lr_rate;
  if (f.lr_epochs) hp.logreg.epochs = *f.lr_epochs;
  if (f.lr_batch) hp.logreg.batch_size = *f.lr_batch;
  if (f.lr_l2) hp.logreg.l2 = *f.lr_l2;
  if (f.svm_lambda) hp.svm.lambda = *f.svm_lambda;
  if (f.svm_epochs) hp.svm.epochs = *f.svm_epochs;
  if (f.rf_trees) hp.forest.tree_count = *f.rf_trees;
  if (f.rf_max_depth) hp.forest.max_depth = *f.rf_max_depth;
  if (f.rf_max_features) hp.forest.max_features = *f.rf_max_features;
  if (f.rf_no_bootstrap) hp.forest.bootstrap = false;
  if (f.threads) hp.forest.threads = *f.threads;
  return config;
}

void select_kernels(const std::string& level) {
  using sentiment::kernels::Level;
  if (level == "auto") return;
  const Level wanted = level == "avx2" ? Level::avx2 : Level::scalar;
  if (!sentiment::kernels::select(wanted)) {
    throw Error(ErrorCategory::usage, "kernel level '" + level + "' is not supported on this CPU");
  }
}

void print_paths(const std::vector<std::filesystem::path>& paths) {
  for (const auto& p : paths) std::cout << "wrote " << p.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tweet sentiment classification toolkit and benchmark harness"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--kernels", f.kernels, "Inner-loop kernels: auto, scalar, avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  auto* stats = app.add_subcommand("stats", "Label frequencies of the dataset");
  add_common(*stats, f);

  auto* train = app.add_subcommand("train", "Train one model and write model + vectorizer artifacts");
  add_common(*train, f);
  add_pipeline(*train, f);
  std::string train_model = "svm", train_vectorizer = "bow";
  train->add_option("--model", train_model, "svm, logreg, mnb or rf")
      ->check(CLI::IsMember({"svm", "logreg", "mnb", "rf"}));
  train->add_option("--vectorizer", train_vectorizer, "bow or tfidf")->check(CLI::IsMember({"bow", "tfidf"}));

  auto* evaluate = app.add_subcommand("evaluate", "Score saved artifacts on the test split");
  add_common(*evaluate, f);
  add_pipeline(*evaluate, f);
  evaluate->add_option("--model-artifact", f.model_artifact, "Model JSON written by train")->required();
  evaluate->add_option("--vectorizer-artifact", f.vectorizer_artifact, "Vectorizer JSON written by train")
      ->required();

  auto* compare = app.add_subcommand("compare", "Run the model x vectorizer grid on one shared split");
  add_common(*compare, f);
  add_pipeline(*compare, f);
  compare->add_option("--model", f.models, "Restrict to these models (repeatable)")
      ->check(CLI::IsMember({"svm", "logreg", "mnb", "rf"}));
  compare->add_option("--vectorizer", f.vectorizers, "Restrict to these vectorizers (repeatable)")
      ->check(CLI::IsMember({"bow", "tfidf"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    std::cerr << "error: usage: " << message << "\n";
    return 2;
  }

  try {
    select_kernels(f.kernels);
    const ExperimentConfig config = build_config(f);

    if (stats->parsed()) {
      const auto result = sentiment::run_stats(config);
      std::cout << sentiment::render_stats(result);
      print_paths(result.written);
    } else if (train->parsed()) {
      const auto result = sentiment::run_train(config, sentiment::parse_model_kind(train_model),
                                               sentiment::parse_vectorizer_kind(train_vectorizer));
      std::cout << "wrote " << result.vectorizer_path.string() << "\n";
      std::cout << "wrote " << result.model_path.string() << "\n";
    } else if (evaluate->parsed()) {
      const auto result = sentiment::run_evaluate(config, f.model_artifact, f.vectorizer_artifact);
      std::cout << sentiment::render_table(result.report);
      print_paths(result.written);
    } else if (compare->parsed()) {
      const auto result = sentiment::run_compare(config);
      std::cout << sentiment::render_table(result.table);
      print_paths(result.written);
    }
  } catch (const Error& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    std::cerr << "error: " << sentiment::to_string(e.category()) << ": " << message << "\n";
    return e.category() == ErrorCategory::usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
