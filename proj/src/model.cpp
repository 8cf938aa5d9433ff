#include <cmath>
#include <limits>

#include "sentiment/error.hpp"
#include "sentiment/kernels.hpp"
#include "sentiment/models.hpp"

namespace sentiment {

using nlohmann::json;

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::mnb: return "mnb";
    case ModelKind::logreg: return "logreg";
    case ModelKind::svm: return "svm";
    case ModelKind::rf: return "rf";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  for (auto kind : {ModelKind::mnb, ModelKind::logreg, ModelKind::svm, ModelKind::rf}) {
    if (text == to_string(kind)) return kind;
  }
  throw Error(ErrorCategory::usage, "unknown model '" + std::string(text) + "'");
}

json to_json(const Hyperparameters& hp) {
  return json{
      {"seed", hp.seed},
      {"mnb", {{"alpha", hp.nb.alpha}}},
      {"logreg",
       {{"learning_rate", hp.logreg.learning_rate},
        {"epochs", hp.logreg.epochs},
        {"batch_size", hp.logreg.batch_size},
        {"l2", hp.logreg.l2}}},
      {"svm", {{"lambda", hp.svm.lambda}, {"epochs", hp.svm.epochs}}},
      {"rf",
       {{"tree_count", hp.forest.tree_count},
        {"max_depth", hp.forest.max_depth},
        {"max_features", hp.forest.max_features},
        {"bootstrap", hp.forest.bootstrap}}},
  };
}

Hyperparameters hyperparameters_from_json(const json& doc) {
  // Missing keys keep their defaults so configs can be partial.
  Hyperparameters hp;
  hp.seed = doc.value("seed", hp.seed);
  if (auto it = doc.find("mnb"); it != doc.end()) hp.nb.alpha = it->value("alpha", hp.nb.alpha);
  if (auto it = doc.find("logreg"); it != doc.end()) {
    hp.logreg.learning_rate = it->value("learning_rate", hp.logreg.learning_rate);
    hp.logreg.epochs = it->value("epochs", hp.logreg.epochs);
    hp.logreg.batch_size = it->value("batch_size", hp.logreg.batch_size);
    hp.logreg.l2 = it->value("l2", hp.logreg.l2);
  }
  if (auto it = doc.find("svm"); it != doc.end()) {
    hp.svm.lambda = it->value("lambda", hp.svm.lambda);
    hp.svm.epochs = it->value("epochs", hp.svm.epochs);
  }
  if (auto it = doc.find("rf"); it != doc.end()) {
    hp.forest.tree_count = it->value("tree_count", hp.forest.tree_count);
    hp.forest.max_depth = it->value("max_depth", hp.forest.max_depth);
    hp.forest.max_features = it->value("max_features", hp.forest.max_features);
    hp.forest.bootstrap = it->value("bootstrap", hp.forest.bootstrap);
  }
  return hp;
}

void validate(const LabeledMatrix& data) {
  if (data.vectors.empty()) throw Error(ErrorCategory::training, "no training rows");
  if (data.vectors.size() != data.labels.size()) {
    throw Error(ErrorCategory::training, "vector and label counts differ");
  }
  for (const auto& v : data.vectors) {
    if (v.dims() != data.dims) throw Error(ErrorCategory::training, "training rows of mixed dims");
  }
}

// ---------------------------------------------------------------------------

Scores softmax(const Scores& z) noexcept {
  double top = -std::numeric_limits<double>::infinity();
  for (double v : z) top = std::max(top, v);
  Scores p{};
  double total = 0.0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    p[c] = std::exp(z[c] - top);
    total += p[c];
  }
  for (auto& v : p) v /= total;
  return p;
}

Scores NaiveBayesModel::joint_log_likelihood(const SparseVector& x) const {
  Scores jll{};
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    jll[c] = log_prior[c] + kernels::dot_sparse(x, feature_log_prob[c]);
  }
  return jll;
}

Scores NaiveBayesModel::posterior(const SparseVector& x) const {
  return softmax(joint_log_likelihood(x));
}

LinearModel LinearModel::zeros(std::size_t dims) {
  LinearModel m;
  m.dims = dims;
  for (auto& row : m.weights) row.assign(dims, 0.0);
  return m;
}

Scores LinearModel::decision(const SparseVector& x) const {
  Scores z{};
  for (std::size_t c = 0; c < kNumClasses; ++c) z[c] = kernels::dot_sparse(x, weights[c]) + bias[c];
  return z;
}

const TreeNode& DecisionTree::leaf_for(const SparseVector& x) const {
  std::size_t i = 0;
  while (nodes[i].feature >= 0) {
    const auto& n = nodes[i];
    i = x.at(static_cast<std::size_t>(n.feature)) <= n.threshold ? n.left : n.right;
  }
  return nodes[i];
}

Polarity DecisionTree::vote(const SparseVector& x) const { return argmax_class(leaf_for(x).counts); }

std::size_t DecisionTree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<std::size_t> d(nodes.size(), 0);
  std::size_t best = 0;
  // Children are always stored after their parent.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    best = std::max(best, d[i]);
    if (nodes[i].feature >= 0) {
      d[nodes[i].left] = d[i] + 1;
      d[nodes[i].right] = d[i] + 1;
    }
  }
  return best;
}

Scores ForestModel::vote_fractions(const SparseVector& x) const {
  Scores votes{};
  for (const auto& tree : trees) votes[class_index(tree.vote(x))] += 1.0;
  for (auto& v : votes) v /= static_cast<double>(trees.size());
  return votes;
}

// ---------------------------------------------------------------------------

TrainedModel::TrainedModel(ModelKind kind, Hyperparameters hp, Parameters params,
                           std::vector<double> loss_history)
    : kind_(kind), hp_(hp), params_(std::move(params)), loss_history_(std::move(loss_history)) {
  const bool ok = (kind_ == ModelKind::mnb && std::holds_alternative<NaiveBayesModel>(params_)) ||
                  ((kind_ == ModelKind::logreg || kind_ == ModelKind::svm) &&
                   std::holds_alternative<LinearModel>(params_)) ||
                  (kind_ == ModelKind::rf && std::holds_alternative<ForestModel>(params_));
  if (!ok) throw std::invalid_argument("model kind does not match parameter set");
}

std::size_t TrainedModel::dims() const noexcept {
  return std::visit([](const auto& p) { return p.dims; }, params_);
}

void TrainedModel::check_dims(const SparseVector& v) const {
  if (v.dims() != dims()) {
    throw Error(ErrorCategory::dimension, "vector has " + std::to_string(v.dims()) +
                                              " dims, model expects " + std::to_string(dims()));
  }
}

Scores TrainedModel::predict_scores(const SparseVector& v) const {
  check_dims(v);
  switch (kind_) {
    case ModelKind::mnb: return std::get<NaiveBayesModel>(params_).posterior(v);
    case ModelKind::logreg: return softmax(std::get<LinearModel>(params_).decision(v));
    case ModelKind::svm: return std::get<LinearModel>(params_).decision(v);
    case ModelKind::rf: return std::get<ForestModel>(params_).vote_fractions(v);
  }
  return {};
}

Polarity TrainedModel::predict(const SparseVector& v) const { return argmax_class(predict_scores(v)); }

Polarity predict(const TrainedModel& model, const SparseVector& v) { return model.predict(v); }

Scores predict_scores(const TrainedModel& model, const SparseVector& v) {
  return model.predict_scores(v);
}

TrainedModel train(ModelKind kind, const LabeledMatrix& data, const Hyperparameters& hp) {
  switch (kind) {
    case ModelKind::mnb: return train_multinomial_nb(data, hp);
    case ModelKind::logreg: return train_logreg(data, hp);
    case ModelKind::svm: return train_linear_svm(data, hp);
    case ModelKind::rf: return train_random_forest(data, hp);
  }
  throw std::invalid_argument("unknown model kind");
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

json class_names() {
  json names = json::array();
  for (auto c : kClassOrder) names.push_back(std::string(to_string(c)));
  return names;
}

json tree_to_json(const DecisionTree& tree, std::size_t i) {
  const auto& n = tree.nodes[i];
  if (n.feature < 0) return json{{"counts", n.counts}};
  return json{{"feature", n.feature},
              {"threshold", n.threshold},
              {"left", tree_to_json(tree, n.left)},
              {"right", tree_to_json(tree, n.right)}};
}

std::uint32_t tree_from_json(const json& node, DecisionTree& tree) {
  const auto index = static_cast<std::uint32_t>(tree.nodes.size());
  tree.nodes.emplace_back();
  if (node.contains("counts")) {
    tree.nodes[index].counts = node.at("counts").get<std::array<double, kNumClasses>>();
    return index;
  }
  tree.nodes[index].feature = node.at("feature").get<std::int32_t>();
  tree.nodes[index].threshold = node.at("threshold").get<double>();
  const auto left = tree_from_json(node.at("left"), tree);
  const auto right = tree_from_json(node.at("right"), tree);
  tree.nodes[index].left = left;
  tree.nodes[index].right = right;
  return index;
}

json rows_to_json(const std::array<std::vector<double>, kNumClasses>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(r);
  return out;
}

std::array<std::vector<double>, kNumClasses> rows_from_json(const json& doc, std::size_t dims) {
  std::array<std::vector<double>, kNumClasses> rows;
  if (!doc.is_array() || doc.size() != kNumClasses) {
    throw Error(ErrorCategory::artifact, "expected one parameter row per class");
  }
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    rows[c] = doc[c].get<std::vector<double>>();
    if (rows[c].size() != dims) throw Error(ErrorCategory::artifact, "parameter row has wrong length");
  }
  return rows;
}

}  // namespace

json TrainedModel::to_json() const {
  json doc;
  doc["format"] = "sentiment.model";
  doc["version"] = kModelFormatVersion;
  doc["variant"] = std::string(to_string(kind_));
  doc["classes"] = class_names();
  doc["dims"] = dims();
  doc["hyperparameters"] = sentiment::to_json(hp_);
  json params;
  switch (kind_) {
    case ModelKind::mnb: {
      const auto& nb = std::get<NaiveBayesModel>(params_);
      params["class_counts"] = nb.class_counts;
      params["feature_log_prob"] = rows_to_json(nb.feature_log_prob);
      break;
    }
    case ModelKind::logreg:
    case ModelKind::svm: {
      const auto& lin = std::get<LinearModel>(params_);
      params["weights"] = rows_to_json(lin.weights);
      params["bias"] = lin.bias;
      if (kind_ == ModelKind::logreg) params["loss_history"] = loss_history_;
      break;
    }
    case ModelKind::rf: {
      const auto& forest = std::get<ForestModel>(params_);
      json trees = json::array();
      for (const auto& t : forest.trees) trees.push_back(tree_to_json(t, 0));
      params["trees"] = std::move(trees);
      break;
    }
  }
  doc["parameters"] = std::move(params);
  return doc;
}

TrainedModel TrainedModel::from_json(const json& doc) {
  try {
    if (doc.at("format") != "sentiment.model") {
      throw Error(ErrorCategory::artifact, "not a model artifact");
    }
    if (doc.at("version") != kModelFormatVersion) {
      throw Error(ErrorCategory::artifact, "unsupported model artifact version");
    }
    if (doc.at("classes") != class_names()) {
      throw Error(ErrorCategory::artifact, "unexpected class order");
    }
    const auto kind = parse_model_kind(doc.at("variant").get<std::string>());
    const auto dims = doc.at("dims").get<std::size_t>();
    const auto hp = hyperparameters_from_json(doc.at("hyperparameters"));
    const auto& params = doc.at("parameters");
    switch (kind) {
      case ModelKind::mnb: {
        auto counts = params.at("class_counts").get<std::array<std::size_t, kNumClasses>>();
        auto nb = NaiveBayesModel::from_parts(dims, hp.nb.alpha, counts,
                                          rows_from_json(params.at("feature_log_prob"), dims));
        return TrainedModel(kind, hp, std::move(nb));
      }
      case ModelKind::logreg:
      case ModelKind::svm: {
        LinearModel lin;
        lin.dims = dims;
        lin.weights = rows_from_json(params.at("weights"), dims);
        lin.bias = params.at("bias").get<std::array<double, kNumClasses>>();
        std::vector<double> history;
        if (kind == ModelKind::logreg) history = params.at("loss_history").get<std::vector<double>>();
        return TrainedModel(kind, hp, std::move(lin), std::move(history));
      }
      case ModelKind::rf: {
        ForestModel forest;
        forest.dims = dims;
        for (const auto& t : params.at("trees")) {
          DecisionTree tree;
          tree_from_json(t, tree);
          for (const auto& n : tree.nodes) {
            if (n.feature >= 0 && static_cast<std::size_t>(n.feature) >= dims) {
              throw Error(ErrorCategory::artifact, "tree split feature out of range");
            }
          }
          forest.trees.push_back(std::move(tree));
        }
        if (forest.trees.empty()) throw Error(ErrorCategory::artifact, "forest has no trees");
        return TrainedModel(kind, hp, std::move(forest));
      }
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCategory::artifact, std::string("invalid model artifact: ") + e.what());
  }
  throw Error(ErrorCategory::artifact, "invalid model artifact");
}

}  // namespace sentiment
