#include <algorithm>
#include <cmath>
#include <numeric>

#include "sentiment/detail/linear_math.hpp"
#include "sentiment/error.hpp"
#include "sentiment/kernels.hpp"
#include "sentiment/models.hpp"
#include "sentiment/random.hpp"

namespace sentiment {

namespace {

constexpr std::uint64_t kLogRegStream = 1;
constexpr std::uint64_t kSvmStream = 2;

std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

}  // namespace

namespace detail {

Scores softmax_residual(const LinearModel& m, const SparseVector& x, Polarity label,
                        double* cross_entropy) {
  const Scores z = m.decision(x);
  Scores r = softmax(z);
  const std::size_t y = class_index(label);
  if (cross_entropy != nullptr) {
    const double top = std::max({z[0], z[1], z[2]});
    double total = 0.0;
    for (double v : z) total += std::exp(v - top);
    *cross_entropy = top + std::log(total) - z[y];
  }
  r[y] -= 1.0;
  return r;
}

double logreg_objective(const LinearModel& m, const LabeledMatrix& data, double l2) {
  double ce = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double sample_ce = 0.0;
    softmax_residual(m, data.vectors[i], data.labels[i], &sample_ce);
    ce += sample_ce;
  }
  double norm2 = 0.0;
  for (const auto& row : m.weights) norm2 += kernels::dot(row, row);
  return ce / static_cast<double>(data.size()) + 0.5 * l2 * norm2;
}

LinearModel logreg_gradient(const LinearModel& m, const LabeledMatrix& data, double l2) {
  LinearModel g = LinearModel::zeros(m.dims);
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto r = softmax_residual(m, data.vectors[i], data.labels[i]);
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      kernels::axpy_sparse(r[c] * inv_n, data.vectors[i], g.weights[c]);
      g.bias[c] += r[c] * inv_n;
    }
  }
  for (std::size_t c = 0; c < kNumClasses; ++c) kernels::axpy(l2, m.weights[c], g.weights[c]);
  return g;
}

// ---------------------------------------------------------------------------

PegasosMachine::PegasosMachine(std::size_t dims) : v_(dims, 0.0) {}

double PegasosMachine::margin(const SparseVector& x, double y) const {
  return y * scale_ * (kernels::dot_sparse(x, v_) + bias_v_);
}

double PegasosMachine::step(const SparseVector& x, double y, double eta, double lambda) {
  const double vx = kernels::dot_sparse(x, v_) + bias_v_;
  const double m = y * scale_ * vx;

  const double shrink = 1.0 - eta * lambda;
  if (shrink <= 0.0) {
    // First Pegasos step (eta = 1/lambda) wipes the iterate.
    std::fill(v_.begin(), v_.end(), 0.0);
    bias_v_ = 0.0;
    norm2_v_ = 0.0;
    scale_ = 1.0;
  } else {
    scale_ *= shrink;
  }

  if (m < 1.0) {
    const double a = eta * y / scale_;
    const double x_norm2 = kernels::dot(x.values(), x.values()) + 1.0;
    // ||v + a x~||^2; after a wipe v is zero, so vx no longer applies.
    const double cross = shrink <= 0.0 ? 0.0 : vx;
    norm2_v_ += 2.0 * a * cross + a * a * x_norm2;
    kernels::axpy_sparse(a, x, v_);
    bias_v_ += a;
  }
  if (scale_ < 1e-9) renormalize();
  return m;
}

void PegasosMachine::project(double lambda) {
  const double norm2 = scale_ * scale_ * norm2_v_;
  const double radius2 = 1.0 / lambda;
  if (norm2 > radius2) scale_ *= std::sqrt(radius2 / norm2);
}

void PegasosMachine::renormalize() {
  kernels::scale(scale_, v_);
  bias_v_ *= scale_;
  norm2_v_ = kernels::dot(v_, v_) + bias_v_ * bias_v_;
  scale_ = 1.0;
}

std::vector<double> PegasosMachine::weights() const {
  std::vector<double> w = v_;
  kernels::scale(scale_, w);
  return w;
}

void PegasosMachine::assign(std::span<const double> w, double b) {
  v_.assign(w.begin(), w.end());
  bias_v_ = b;
  scale_ = 1.0;
  norm2_v_ = kernels::dot(v_, v_) + b * b;
}

std::vector<double> pegasos_subgradient(std::span<const double> w_with_bias, const SparseVector& x,
                                        double y, double lambda) {
  const std::size_t d = w_with_bias.size() - 1;
  std::vector<double> g(w_with_bias.begin(), w_with_bias.end());
  for (auto& v : g) v *= lambda;
  const double m = y * (kernels::dot_sparse(x, w_with_bias.first(d)) + w_with_bias[d]);
  if (m < 1.0) {
    kernels::axpy_sparse(-y, x, std::span<double>(g).first(d));
    g[d] -= y;
  }
  return g;
}

double pegasos_objective(std::span<const double> w_with_bias, const SparseVector& x, double y,
                         double lambda) {
  const std::size_t d = w_with_bias.size() - 1;
  const double m = y * (kernels::dot_sparse(x, w_with_bias.first(d)) + w_with_bias[d]);
  return 0.5 * lambda * kernels::dot(w_with_bias, w_with_bias) + std::max(0.0, 1.0 - m);
}

}  // namespace detail

// ---------------------------------------------------------------------------

TrainedModel train_logreg(const LabeledMatrix& data, const Hyperparameters& hp) {
  validate(data);
  const auto& p = hp.logreg;
  if (!(p.learning_rate > 0.0) || p.epochs == 0 || p.batch_size == 0 || p.l2 < 0.0) {
    throw Error(ErrorCategory::training,
                "logreg: learning rate, epochs and batch size must be positive, l2 non-negative");
  }

  LinearModel model = LinearModel::zeros(data.dims);
  Rng rng(derive_seed(hp.seed, kLogRegStream));
  auto order = identity_order(data.size());
  std::vector<Scores> residuals;
  residuals.reserve(p.batch_size);
  std::vector<double> history;
  history.reserve(p.epochs);

  for (std::size_t epoch = 0; epoch < p.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double ce_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += p.batch_size) {
      const std::size_t end = std::min(order.size(), start + p.batch_size);
      const double step = p.learning_rate / static_cast<double>(end - start);

      // Residuals at the pre-update weights, then one gradient step:
      // W <- (1 - lr l2) W - lr/B sum_i r_i x_i^T, b <- b - lr/B sum_i r_i.
      residuals.clear();
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t i = order[k];
        double ce = 0.0;
        residuals.push_back(detail::softmax_residual(model, data.vectors[i], data.labels[i], &ce));
        ce_sum += ce;
      }
      if (p.l2 > 0.0) {
        for (auto& row : model.weights) kernels::scale(1.0 - p.learning_rate * p.l2, row);
      }
      for (std::size_t k = start; k < end; ++k) {
        const auto& r = residuals[k - start];
        const auto& x = data.vectors[order[k]];
        for (std::size_t c = 0; c < kNumClasses; ++c) {
          kernels::axpy_sparse(-step * r[c], x, model.weights[c]);
          model.bias[c] -= step * r[c];
        }
      }
    }
    double norm2 = 0.0;
    for (const auto& row : model.weights) norm2 += kernels::dot(row, row);
    const double loss = ce_sum / static_cast<double>(data.size()) + 0.5 * p.l2 * norm2;
    if (!std::isfinite(loss)) {
      throw Error(ErrorCategory::training,
                  "logreg: loss became non-finite at epoch " + std::to_string(epoch + 1) +
                      " (learning rate too large?)");
    }
    history.push_back(loss);
  }
  return TrainedModel(ModelKind::logreg, hp, std::move(model), std::move(history));
}

TrainedModel train_linear_svm(const LabeledMatrix& data, const Hyperparameters& hp) {
  validate(data);
  const auto& p = hp.svm;
  if (!(p.lambda > 0.0) || p.epochs == 0) {
    throw Error(ErrorCategory::training, "svm: lambda and epochs must be positive");
  }
  std::array<bool, kNumClasses> seen{};
  for (auto label : data.labels) seen[class_index(label)] = true;
  if (std::count(seen.begin(), seen.end(), true) < 2) {
    throw Error(ErrorCategory::training, "svm: training data has a single class");
  }

  LinearModel model = LinearModel::zeros(data.dims);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    // Same visiting order for every one-vs-rest machine.
    Rng rng(derive_seed(hp.seed, kSvmStream));
    auto order = identity_order(data.size());
    detail::PegasosMachine machine(data.dims);
    std::size_t t = 0;
    for (std::size_t epoch = 0; epoch < p.epochs; ++epoch) {
      rng.shuffle(std::span<std::size_t>(order));
      for (const std::size_t i : order) {
        ++t;
        const double eta = 1.0 / (p.lambda * static_cast<double>(t));
        const double y = class_index(data.labels[i]) == c ? 1.0 : -1.0;
        machine.step(data.vectors[i], y, eta, p.lambda);
        machine.project(p.lambda);
      }
    }
    model.weights[c] = machine.weights();
    model.bias[c] = machine.bias();
  }
  return TrainedModel(ModelKind::svm, hp, std::move(model));
}

}  // namespace sentiment
