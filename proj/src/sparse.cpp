#include "sentiment/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sentiment {

SparseVector SparseVector::from_pairs(std::size_t dims,
                                      std::vector<std::pair<std::uint32_t, double>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector v(dims);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [index, weight] = entries[i];
    if (index >= dims) throw std::invalid_argument("sparse index out of range");
    if (i > 0 && entries[i - 1].first == index) throw std::invalid_argument("duplicate sparse index");
    if (!std::isfinite(weight)) throw std::invalid_argument("non-finite sparse weight");
    if (weight != 0.0) v.push_back(index, weight);
  }
  return v;
}

SparseVector SparseVector::from_dense(std::span<const double> dense) {
  SparseVector v(dense.size());
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (!std::isfinite(dense[i])) throw std::invalid_argument("non-finite sparse weight");
    if (dense[i] != 0.0) v.push_back(static_cast<std::uint32_t>(i), dense[i]);
  }
  return v;
}

double SparseVector::at(std::size_t dim) const noexcept {
  const auto it = std::lower_bound(indices_.begin(), indices_.end(), dim);
  if (it == indices_.end() || *it != dim) return 0.0;
  return values_[static_cast<std::size_t>(it - indices_.begin())];
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> dense(dims_, 0.0);
  for (std::size_t k = 0; k < indices_.size(); ++k) dense[indices_[k]] = values_[k];
  return dense;
}

}  // namespace sentiment
