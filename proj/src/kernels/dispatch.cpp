#include <atomic>
#include <cstdlib>
#include <string_view>

#include "sentiment/kernels.hpp"

namespace sentiment::kernels {

#if !defined(SENTIMENT_HAVE_AVX2)
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(SENTIMENT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct State {
  std::atomic<const KernelTable*> table;
  std::atomic<Level> level;

  State() : table(&scalar_table()), level(Level::scalar) {
    const char* env = std::getenv("SENTIMENT_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return;
    if (cpu_has_avx2() && avx2_table() != nullptr) {
      table = avx2_table();
      level = Level::avx2;
    }
  }
};

State& state() noexcept {
  static State s;
  return s;
}

}  // namespace

bool supported(Level level) noexcept {
  switch (level) {
    case Level::scalar: return true;
    case Level::avx2: return avx2_table() != nullptr && cpu_has_avx2();
  }
  return false;
}

bool select(Level level) noexcept {
  if (!supported(level)) return false;
  auto& s = state();
  s.table = level == Level::avx2 ? avx2_table() : &scalar_table();
  s.level = level;
  return true;
}

Level active_level() noexcept { return state().level; }

const KernelTable& active() noexcept { return *state().table.load(std::memory_order_relaxed); }

std::string_view to_string(Level level) noexcept {
  return level == Level::avx2 ? "avx2" : "scalar";
}

}  // namespace sentiment::kernels
