#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sentiment/kernels.hpp"

using namespace sentiment;

namespace {

std::vector<double> random_dense(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> dist(0.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(gen);
  return v;
}

bool close(double a, double b, double scale) { return std::abs(a - b) <= 1e-12 * (1.0 + scale); }

}  // namespace

TEST_CASE("kernel selection") {
  CHECK(kernels::supported(kernels::Level::scalar));
  const auto before = kernels::active_level();
  CHECK(kernels::select(kernels::Level::scalar));
  CHECK(kernels::active_level() == kernels::Level::scalar);
  kernels::select(before);
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const kernels::KernelTable* fast = kernels::avx2_table();
  if (fast == nullptr || !kernels::supported(kernels::Level::avx2)) {
    MESSAGE("AVX2 variant unavailable; nothing to compare");
    return;
  }
  const auto& ref = kernels::scalar_table();
  std::mt19937_64 gen(99);
  // Lengths cover empty input, the remainder loops and multiple full blocks.
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 63u, 64u, 1000u, 4099u}) {
    const auto a = random_dense(gen, n);
    const auto b = random_dense(gen, n);
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);

    CHECK(close(ref.dot(a.data(), b.data(), n), fast->dot(a.data(), b.data(), n), mag));
    double abs_sum = 0.0;
    for (double x : a) abs_sum += std::abs(x);
    CHECK(close(ref.sum(a.data(), n), fast->sum(a.data(), n), abs_sum));

    auto s1 = a, s2 = a;
    ref.scale(-1.7, s1.data(), n);
    fast->scale(-1.7, s2.data(), n);
    CHECK(s1 == s2);

    auto y1 = b, y2 = b;
    ref.axpy(0.37, a.data(), y1.data(), n);
    fast->axpy(0.37, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(close(y1[i], y2[i], std::abs(y1[i])));

    // Sparse gather over a random increasing subset.
    std::vector<std::uint32_t> idx;
    std::vector<double> val;
    for (std::size_t i = 0; i < n; ++i) {
      if (gen() % 3 == 0) {
        idx.push_back(static_cast<std::uint32_t>(i));
        val.push_back(a[i]);
      }
    }
    double smag = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) smag += std::abs(val[k] * b[idx[k]]);
    CHECK(close(ref.dot_sparse(idx.data(), val.data(), idx.size(), b.data()),
                fast->dot_sparse(idx.data(), val.data(), idx.size(), b.data()), smag));
  }
}

TEST_CASE("scalar kernels against a direct loop") {
  const auto& ref = kernels::scalar_table();
  const std::vector<double> a = {1, 2, 3, 4, 5};
  const std::vector<double> b = {5, 4, 3, 2, 1};
  CHECK(ref.dot(a.data(), b.data(), 5) == 35.0);
  CHECK(ref.sum(a.data(), 5) == 15.0);
  const std::uint32_t idx[] = {0, 4};
  const double val[] = {2.0, -1.0};
  CHECK(ref.dot_sparse(idx, val, 2, b.data()) == 9.0);
}
