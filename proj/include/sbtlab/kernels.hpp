#pragma once

// Dense double-precision inner loops. Each has a scalar reference version and
// an AVX2/FMA version; the active table is picked once at startup from CPUID
// (override with SBTLAB_SIMD=scalar).

#include <cstddef>
#include <string_view>

namespace sbt::kernels {

struct KernelTable {
  const char* name;
  /// y[i] += a * x[i]
  void (*axpy)(std::size_t n, double a, const double* x, double* y);
  double (*dot)(std::size_t n, const double* x, const double* y);
  double (*sum_squares)(std::size_t n, const double* x);
  /// max_i |x[i] - y[i]|
  double (*max_abs_diff)(std::size_t n, const double* x, const double* y);
};

const KernelTable& scalar_table();
/// nullptr when the build has no AVX2 variant.
const KernelTable* avx2_table();
bool cpu_has_avx2();

const KernelTable& active();
/// Forces a table by name ("scalar" or "avx2"); returns false if unavailable.
bool select(std::string_view name);

inline void axpy(std::size_t n, double a, const double* x, double* y) { active().axpy(n, a, x, y); }
inline double dot(std::size_t n, const double* x, const double* y) { return active().dot(n, x, y); }
inline double sum_squares(std::size_t n, const double* x) { return active().sum_squares(n, x); }
inline double max_abs_diff(std::size_t n, const double* x, const double* y) {
  return active().max_abs_diff(n, x, y);
}

}  // namespace sbt::kernels
