#include "sentiment/kernels.hpp"

namespace sentiment::kernels {

namespace {

double dot_sparse_scalar(const std::uint32_t* idx, const double* val, std::size_t nnz,
                         const double* dense) {
  double acc = 0.0;
  for (std::size_t k = 0; k < nnz; ++k) acc += val[k] * dense[idx[k]];
  return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void scale_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static constexpr KernelTable table{dot_sparse_scalar, dot_scalar, scale_scalar, axpy_scalar,
                                     sum_scalar};
  return table;
}

}  // namespace sentiment::kernels
