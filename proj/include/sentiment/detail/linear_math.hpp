#pragma once

// Objective and gradient pieces of the linear learners, exposed for the
// finite-difference checks.

#include <span>
#include <vector>

#include "sentiment/models.hpp"

namespace sentiment::detail {

/// softmax(W x + b) - onehot(label). When `cross_entropy` is given it
/// receives -log p(label), computed from the logits to stay finite.
Scores softmax_residual(const LinearModel& m, const SparseVector& x, Polarity label,
                        double* cross_entropy = nullptr);

/// mean cross-entropy + (l2 / 2) ||W||^2 (bias unregularized)
double logreg_objective(const LinearModel& m, const LabeledMatrix& data, double l2);

/// Full-batch gradient of logreg_objective.
LinearModel logreg_gradient(const LinearModel& m, const LabeledMatrix& data, double l2);

/// Pegasos iterate for one binary machine with the bias folded in as a
/// regularized weight on a constant 1 feature. Stored as w = scale * v.
class PegasosMachine {
 public:
  explicit PegasosMachine(std::size_t dims);

  /// One stochastic subgradient step of lambda/2 ||w||^2 + hinge(y (w.x + b))
  /// with step size eta; y is +1 or -1. Returns the margin y (w.x + b)
  /// measured before the step.
  double step(const SparseVector& x, double y, double eta, double lambda);
  /// Scales w onto the ball of radius 1/sqrt(lambda) when outside it.
  void project(double lambda);

  std::vector<double> weights() const;  // dense w
  double bias() const noexcept { return scale_ * bias_v_; }
  double margin(const SparseVector& x, double y) const;

  /// Sets w and b directly (scale reset to 1).
  void assign(std::span<const double> w, double b);

 private:
  void renormalize();

  std::vector<double> v_;
  double bias_v_ = 0.0;
  double scale_ = 1.0;
  double norm2_v_ = 0.0;  // ||v||^2 + bias_v^2
};

/// lambda w - [y (w.x~) < 1] y x~, with x~ = (x, 1) and w = (weights, bias).
std::vector<double> pegasos_subgradient(std::span<const double> w_with_bias,
                                        const SparseVector& x, double y, double lambda);

/// lambda/2 ||w~||^2 + max(0, 1 - y w~.x~)
double pegasos_objective(std::span<const double> w_with_bias, const SparseVector& x, double y,
                         double lambda);

}  // namespace sentiment::detail
