#include <cmath>
#include <limits>

#include "sentiment/error.hpp"
#include "sentiment/kernels.hpp"
#include "sentiment/models.hpp"

namespace sentiment {

NaiveBayesModel NaiveBayesModel::from_parts(
    std::size_t dims, double alpha, const std::array<std::size_t, kNumClasses>& class_counts,
    std::array<std::vector<double>, kNumClasses> feature_log_prob) {
  NaiveBayesModel m;
  m.dims = dims;
  m.alpha = alpha;
  m.class_counts = class_counts;
  m.feature_log_prob = std::move(feature_log_prob);
  std::size_t total = 0;
  for (auto n : class_counts) total += n;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    m.log_prior[c] = class_counts[c] == 0
                         ? -std::numeric_limits<double>::infinity()
                         : std::log(static_cast<double>(class_counts[c]) / static_cast<double>(total));
  }
  return m;
}

TrainedModel train_multinomial_nb(const LabeledMatrix& data, const Hyperparameters& hp) {
  validate(data);
  const double alpha = hp.nb.alpha;
  if (!(alpha > 0.0)) throw Error(ErrorCategory::training, "mnb: alpha must be positive");

  const std::size_t dims = data.dims;
  std::array<std::size_t, kNumClasses> class_counts{};
  std::array<std::vector<double>, kNumClasses> totals;
  for (auto& row : totals) row.assign(dims, 0.0);

  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& x = data.vectors[i];
    for (double w : x.values()) {
      if (w < 0.0) throw Error(ErrorCategory::training, "mnb: negative feature weight");
    }
    const auto c = class_index(data.labels[i]);
    ++class_counts[c];
    kernels::axpy_sparse(1.0, x, totals[c]);
  }

  // log((W_ct + alpha) / (W_c + alpha V))
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const double denom = kernels::sum(totals[c]) + alpha * static_cast<double>(dims);
    for (auto& w : totals[c]) w = std::log((w + alpha) / denom);
  }
  auto model = NaiveBayesModel::from_parts(dims, alpha, class_counts, std::move(totals));
  return TrainedModel(ModelKind::mnb, hp, std::move(model));
}

}  // namespace sentiment
