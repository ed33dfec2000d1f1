#include "sbtlab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace sbt::kernels {
namespace {

const KernelTable* detect() {
  if (const char* env = std::getenv("SBTLAB_SIMD"); env != nullptr && std::string(env) == "scalar")
    return &scalar_table();
  if (cpu_has_avx2() && avx2_table() != nullptr) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{detect()};
  return current;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  if (name == "scalar") {
    slot().store(&scalar_table(), std::memory_order_release);
    return true;
  }
  if (name == "avx2" && cpu_has_avx2() && avx2_table() != nullptr) {
    slot().store(avx2_table(), std::memory_order_release);
    return true;
  }
  return false;
}

}  // namespace sbt::kernels
