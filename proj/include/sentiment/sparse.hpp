#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sentiment {

/// Sparse row over `dims` dimensions, stored as parallel index / weight arrays.
/// Indices are strictly increasing and < dims; weights are finite and nonzero.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::size_t dims) : dims_(dims) {}

  /// Sorts, rejects duplicate or out-of-range indices and non-finite weights
  /// (std::invalid_argument), and drops zero weights.
  static SparseVector from_pairs(std::size_t dims,
                                 std::vector<std::pair<std::uint32_t, double>> entries);
  static SparseVector from_dense(std::span<const double> dense);

  std::size_t dims() const noexcept { return dims_; }
  std::size_t nnz() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }

  std::span<const std::uint32_t> indices() const noexcept { return indices_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Weight at a dimension; absent dimensions read as 0.0.
  double at(std::size_t dim) const noexcept;

  std::vector<double> to_dense() const;

  /// Appends an entry; the caller keeps indices increasing and the weight nonzero.
  void push_back(std::uint32_t index, double weight) {
    indices_.push_back(index);
    values_.push_back(weight);
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::size_t dims_ = 0;
  std::vector<std::uint32_t> indices_;
  std::vector<double> values_;
};

}  // namespace sentiment
