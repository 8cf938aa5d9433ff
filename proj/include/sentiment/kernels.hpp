#pragma once

// Inner loops of the linear models, with a scalar reference implementation
// and an AVX2/FMA variant picked at runtime. Reductions in the vector variant
// use four partial sums, so results agree with the scalar path to rounding,
// not bit for bit. Set SENTIMENT_KERNELS=scalar to force the reference path.

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "sentiment/sparse.hpp"

namespace sentiment::kernels {

enum class Level { scalar, avx2 };

struct KernelTable {
  // sum_k val[k] * dense[idx[k]]
  double (*dot_sparse)(const std::uint32_t* idx, const double* val, std::size_t nnz,
                       const double* dense);
  double (*dot)(const double* a, const double* b, std::size_t n);
  // x *= a
  void (*scale)(double a, double* x, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the build has no AVX2 variant.
const KernelTable* avx2_table() noexcept;

bool supported(Level level) noexcept;
/// Switches the process-wide table; returns false (and keeps the current
/// table) when the CPU or build lacks the level.
bool select(Level level) noexcept;
Level active_level() noexcept;
const KernelTable& active() noexcept;
std::string_view to_string(Level level) noexcept;

inline double dot_sparse(const SparseVector& x, std::span<const double> dense) {
  assert(x.dims() <= dense.size());
  return active().dot_sparse(x.indices().data(), x.values().data(), x.nnz(), dense.data());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

inline void scale(double a, std::span<double> x) { active().scale(a, x.data(), x.size()); }

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(a, x.data(), y.data(), x.size());
}

inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

/// y[idx[k]] += a * val[k]. Scatter has no AVX2 form, so this is scalar only.
inline void axpy_sparse(double a, const SparseVector& x, std::span<double> y) {
  const auto idx = x.indices();
  const auto val = x.values();
  for (std::size_t k = 0; k < idx.size(); ++k) y[idx[k]] += a * val[k];
}

}  // namespace sentiment::kernels
