#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace sentiment {

/// Portable seeded generator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Bounded draws and shuffles are implemented here rather than with
/// <random> distributions, whose algorithms are implementation-defined, so a
/// given seed produces the same permutation on every platform and toolchain.
///
///   uniform_below(n): draw 64-bit words, reject those >= the largest
///     multiple of n, return word % n.
///   shuffle: Fisher-Yates from the back, j = uniform_below(i + 1).
///   derive_seed(seed, stream): one splitmix64 step over seed ^ (stream *
///     golden ratio); gives independent per-tree / per-model streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t word;
    do {
      word = engine_();
    } while (word >= limit);
    return word % bound;
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed ^ (stream * 0x9E3779B97F4A7C15ull));
}

}  // namespace sentiment
