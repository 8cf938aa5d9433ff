#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "sentiment/error.hpp"
#include "sentiment/models.hpp"
#include "sentiment/random.hpp"

namespace sentiment {

namespace {

constexpr std::uint64_t kTreeStreamBase = 1000;

using ClassWeights = std::array<double, kNumClasses>;

struct ColumnEntry {
  std::uint32_t row;
  double value;
};

// Column-major copy of the training rows, shared read-only by all trees.
std::vector<std::vector<ColumnEntry>> build_columns(const LabeledMatrix& data) {
  std::vector<std::vector<ColumnEntry>> cols(data.dims);
  for (std::size_t r = 0; r < data.size(); ++r) {
    const auto& x = data.vectors[r];
    for (std::size_t k = 0; k < x.nnz(); ++k) {
      cols[x.indices()[k]].push_back({static_cast<std::uint32_t>(r), x.values()[k]});
    }
  }
  return cols;
}

double total(const ClassWeights& w) { return w[0] + w[1] + w[2]; }

// W * gini = W - sum_c w_c^2 / W
double weighted_gini(const ClassWeights& w) {
  const double n = total(w);
  if (n <= 0.0) return 0.0;
  return n - (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]) / n;
}

class TreeBuilder {
 public:
  TreeBuilder(const LabeledMatrix& data, const std::vector<std::vector<ColumnEntry>>& columns,
              const ForestParams& params, std::size_t mtry, std::uint64_t seed)
      : data_(data),
        columns_(columns),
        params_(params),
        mtry_(mtry),
        rng_(seed),
        weight_(data.size(), 0.0),
        stamp_(data.size(), 0) {
    features_.resize(data.dims);
    for (std::size_t f = 0; f < data.dims; ++f) features_[f] = static_cast<std::uint32_t>(f);
  }

  DecisionTree build() {
    if (params_.bootstrap) {
      for (std::size_t k = 0; k < data_.size(); ++k) weight_[rng_.uniform_below(data_.size())] += 1.0;
    } else {
      std::fill(weight_.begin(), weight_.end(), 1.0);
    }
    for (std::size_t r = 0; r < data_.size(); ++r) {
      if (weight_[r] > 0.0) rows_.push_back(static_cast<std::uint32_t>(r));
    }

    struct Work {
      std::uint32_t node;
      std::size_t begin, end, depth;
    };
    DecisionTree tree;
    tree.nodes.emplace_back();
    std::vector<Work> stack{{0, 0, rows_.size(), 0}};
    while (!stack.empty()) {
      const Work w = stack.back();
      stack.pop_back();

      ClassWeights totals{};
      for (std::size_t k = w.begin; k < w.end; ++k) {
        totals[class_index(data_.labels[rows_[k]])] += weight_[rows_[k]];
      }
      tree.nodes[w.node].counts = totals;

      const bool pure = std::count_if(totals.begin(), totals.end(), [](double v) { return v > 0.0; }) <= 1;
      const bool depth_capped = params_.max_depth > 0 && w.depth >= params_.max_depth;
      if (pure || depth_capped || w.end - w.begin < 2) continue;

      const auto split = find_split(w.begin, w.end, totals);
      if (!split) continue;

      const auto mid = std::stable_partition(
          rows_.begin() + static_cast<std::ptrdiff_t>(w.begin),
          rows_.begin() + static_cast<std::ptrdiff_t>(w.end), [&](std::uint32_t r) {
            return data_.vectors[r].at(split->feature) <= split->threshold;
          });
      const std::size_t cut = static_cast<std::size_t>(mid - rows_.begin());

      const auto left = static_cast<std::uint32_t>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      auto& node = tree.nodes[w.node];
      node.feature = static_cast<std::int32_t>(split->feature);
      node.threshold = split->threshold;
      node.left = left;
      node.right = left + 1;
      stack.push_back({left + 1, cut, w.end, w.depth + 1});
      stack.push_back({left, w.begin, cut, w.depth + 1});
    }
    return tree;
  }

 private:
  struct Split {
    std::size_t feature;
    double threshold;
    double impurity;
  };

  struct Group {
    double value;
    ClassWeights weights;
  };

  // Draws features without replacement until at least mtry have been
  // examined and one of them splits the node; exhausts all features if needed.
  std::optional<Split> find_split(std::size_t begin, std::size_t end, const ClassWeights& totals) {
    ++stamp_id_;
    for (std::size_t k = begin; k < end; ++k) stamp_[rows_[k]] = stamp_id_;

    std::optional<Split> best;
    const std::size_t d = features_.size();
    for (std::size_t i = 0; i < d; ++i) {
      if (i >= mtry_ && best) break;
      const std::size_t j = i + rng_.uniform_below(d - i);
      std::swap(features_[i], features_[j]);
      const std::size_t f = features_[i];
      if (auto s = evaluate(f, begin, end, totals); s && (!best || s->impurity < best->impurity)) {
        best = s;
      }
    }
    return best;
  }

  std::optional<Split> evaluate(std::size_t f, std::size_t begin, std::size_t end,
                                const ClassWeights& totals) {
    entries_.clear();
    const auto& column = columns_[f];
    if (column.size() <= 4 * (end - begin)) {
      for (const auto& e : column) {
        if (stamp_[e.row] == stamp_id_) entries_.push_back({e.value, label_weight(e.row)});
      }
    } else {
      for (std::size_t k = begin; k < end; ++k) {
        const double v = data_.vectors[rows_[k]].at(f);
        if (v != 0.0) entries_.push_back({v, label_weight(rows_[k])});
      }
    }

    // Rows without an entry sit at 0.
    ClassWeights zero = totals;
    for (const auto& e : entries_) {
      for (std::size_t c = 0; c < kNumClasses; ++c) zero[c] -= e.weights[c];
    }
    if (total(zero) > 0.5) entries_.push_back({0.0, zero});
    if (entries_.size() < 2) return std::nullopt;

    std::sort(entries_.begin(), entries_.end(),
              [](const Group& a, const Group& b) { return a.value < b.value; });
    // Merge equal values.
    std::size_t m = 0;
    for (std::size_t k = 1; k < entries_.size(); ++k) {
      if (entries_[k].value == entries_[m].value) {
        for (std::size_t c = 0; c < kNumClasses; ++c) entries_[m].weights[c] += entries_[k].weights[c];
      } else {
        entries_[++m] = entries_[k];
      }
    }
    const std::size_t groups = m + 1;
    if (groups < 2) return std::nullopt;

    std::optional<Split> best;
    ClassWeights left{};
    for (std::size_t k = 0; k + 1 < groups; ++k) {
      for (std::size_t c = 0; c < kNumClasses; ++c) left[c] += entries_[k].weights[c];
      ClassWeights right{};
      for (std::size_t c = 0; c < kNumClasses; ++c) right[c] = totals[c] - left[c];
      const double impurity = weighted_gini(left) + weighted_gini(right);
      if (!best || impurity < best->impurity) {
        const double lo = entries_[k].value;
        const double hi = entries_[k + 1].value;
        double threshold = lo + (hi - lo) / 2.0;
        if (!(threshold < hi)) threshold = lo;
        best = Split{f, threshold, impurity};
      }
    }
    return best;
  }

  ClassWeights label_weight(std::uint32_t row) const {
    ClassWeights w{};
    w[class_index(data_.labels[row])] = weight_[row];
    return w;
  }

  const LabeledMatrix& data_;
  const std::vector<std::vector<ColumnEntry>>& columns_;
  const ForestParams& params_;
  std::size_t mtry_;
  Rng rng_;
  std::vector<double> weight_;  // bootstrap multiplicity per row
  std::vector<std::uint32_t> rows_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t stamp_id_ = 0;
  std::vector<std::uint32_t> features_;
  std::vector<Group> entries_;
};

}  // namespace

TrainedModel train_random_forest(const LabeledMatrix& data, const Hyperparameters& hp) {
  validate(data);
  const auto& p = hp.forest;
  if (p.tree_count == 0) throw Error(ErrorCategory::training, "rf: tree count must be positive");

  const std::size_t mtry =
      p.max_features > 0
          ? std::min(p.max_features, std::max<std::size_t>(data.dims, 1))
          : std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(data.dims)))));
  const auto columns = build_columns(data);

  ForestModel forest;
  forest.dims = data.dims;
  forest.trees.resize(p.tree_count);

  // Each tree owns a stream derived from (seed, tree index), so the result
  // does not depend on the number of threads or their scheduling.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < p.tree_count; t = next++) {
      TreeBuilder builder(data, columns, p, mtry, derive_seed(hp.seed, kTreeStreamBase + t));
      forest.trees[t] = builder.build();
    }
  };
  std::size_t threads = p.threads > 0 ? p.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, p.tree_count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return TrainedModel(ModelKind::rf, hp, std::move(forest));
}

}  // namespace sentiment
