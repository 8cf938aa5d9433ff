#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sentiment/polarity.hpp"
#include "sentiment/sparse.hpp"

namespace sentiment {

enum class ModelKind { mnb, logreg, svm, rf };

std::string_view to_string(ModelKind kind) noexcept;
/// Throws Error{usage} for anything but mnb / logreg / svm / rf.
ModelKind parse_model_kind(std::string_view text);

inline constexpr std::array<ModelKind, 4> kAllModels = {ModelKind::svm, ModelKind::mnb,
                                                        ModelKind::rf, ModelKind::logreg};

struct NaiveBayesParams {
  double alpha = 1.0;
};

struct LogRegParams {
  double learning_rate = 0.5;
  std::size_t epochs = 50;
  std::size_t batch_size = 64;
  double l2 = 1e-4;
};

struct SvmParams {
  double lambda = 1e-4;
  std::size_t epochs = 50;
};

struct ForestParams {
  std::size_t tree_count = 100;
  std::size_t max_depth = 0;      // 0: unlimited
  std::size_t max_features = 0;   // 0: ceil(sqrt(dims))
  bool bootstrap = true;
  std::size_t threads = 0;        // 0: hardware concurrency; never affects results
};

struct Hyperparameters {
  NaiveBayesParams nb;
  LogRegParams logreg;
  SvmParams svm;
  ForestParams forest;
  std::uint64_t seed = 42;
};

nlohmann::json to_json(const Hyperparameters& hp);
Hyperparameters hyperparameters_from_json(const nlohmann::json& doc);

/// Training rows. All vectors share `dims`; labels align with vectors.
struct LabeledMatrix {
  std::vector<SparseVector> vectors;
  std::vector<Polarity> labels;
  std::size_t dims = 0;

  std::size_t size() const noexcept { return vectors.size(); }
};

/// Throws Error{training} if empty, misaligned, or of mixed dims.
void validate(const LabeledMatrix& data);

using Scores = std::array<double, kNumClasses>;

// ---------------------------------------------------------------------------
// Learned parameter sets

struct NaiveBayesModel {
  std::size_t dims = 0;
  double alpha = 1.0;
  std::array<std::size_t, kNumClasses> class_counts{};
  std::array<double, kNumClasses> log_prior{};
  std::array<std::vector<double>, kNumClasses> feature_log_prob;

  /// Rebuilds a model from stored counts and likelihood rows; log priors are
  /// recomputed from the counts.
  static NaiveBayesModel from_parts(std::size_t dims, double alpha,
                                    const std::array<std::size_t, kNumClasses>& class_counts,
                                    std::array<std::vector<double>, kNumClasses> feature_log_prob);

  /// log P(c) + sum_t x_t log P(t | c)
  Scores joint_log_likelihood(const SparseVector& x) const;
  /// Posterior probabilities.
  Scores posterior(const SparseVector& x) const;
};

/// Dense per-class weight rows plus biases; shared by logreg and svm.
struct LinearModel {
  std::size_t dims = 0;
  std::array<std::vector<double>, kNumClasses> weights;
  std::array<double, kNumClasses> bias{};

  static LinearModel zeros(std::size_t dims);

  /// w_c . x + b_c for every class.
  Scores decision(const SparseVector& x) const;
};

Scores softmax(const Scores& z) noexcept;

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // x[feature] <= threshold goes left
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  std::array<double, kNumClasses> counts{};  // bootstrap-weighted class totals
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  const TreeNode& leaf_for(const SparseVector& x) const;
  Polarity vote(const SparseVector& x) const;
  std::size_t depth() const;
};

struct ForestModel {
  std::size_t dims = 0;
  std::vector<DecisionTree> trees;

  /// Fraction of trees voting for each class.
  Scores vote_fractions(const SparseVector& x) const;
};

// ---------------------------------------------------------------------------

/// One of the four classifiers. Immutable after training; prediction is a
/// pure function of (model, vector) and safe to call concurrently.
class TrainedModel {
 public:
  using Parameters = std::variant<NaiveBayesModel, LinearModel, ForestModel>;

  TrainedModel(ModelKind kind, Hyperparameters hp, Parameters params,
               std::vector<double> loss_history = {});

  ModelKind kind() const noexcept { return kind_; }
  std::size_t dims() const noexcept;
  const Hyperparameters& hyperparameters() const noexcept { return hp_; }
  const Parameters& parameters() const noexcept { return params_; }
  /// Mean training loss per epoch (logreg only).
  const std::vector<double>& loss_history() const noexcept { return loss_history_; }

  /// mnb, logreg: class probabilities. svm: raw one-vs-rest margins.
  /// rf: vote fractions. Throws Error{dimension} on a dims mismatch.
  Scores predict_scores(const SparseVector& v) const;
  /// argmax of predict_scores; ties go to the earlier class in
  /// [negative, neutral, positive].
  Polarity predict(const SparseVector& v) const;

  nlohmann::json to_json() const;
  static TrainedModel from_json(const nlohmann::json& doc);

 private:
  void check_dims(const SparseVector& v) const;

  ModelKind kind_;
  Hyperparameters hp_;
  Parameters params_;
  std::vector<double> loss_history_;
};

inline constexpr int kModelFormatVersion = 1;

TrainedModel train_multinomial_nb(const LabeledMatrix& data, const Hyperparameters& hp);
TrainedModel train_logreg(const LabeledMatrix& data, const Hyperparameters& hp);
TrainedModel train_linear_svm(const LabeledMatrix& data, const Hyperparameters& hp);
TrainedModel train_random_forest(const LabeledMatrix& data, const Hyperparameters& hp);

TrainedModel train(ModelKind kind, const LabeledMatrix& data, const Hyperparameters& hp);

Polarity predict(const TrainedModel& model, const SparseVector& v);
Scores predict_scores(const TrainedModel& model, const SparseVector& v);

}  // namespace sentiment
