#pragma once

// Data-parallel inner loops used by the linear algebra and share code.
//
// Every kernel has a scalar reference implementation. Vectorized variants are
// compiled into separate translation units with their own ISA flags and picked
// once at runtime from the CPU's capabilities. PB_ALLOC_SIMD=scalar|avx2|auto
// overrides the choice.
//
// axpy, scale and safe_divide are bit-identical across variants. dot,
// compensated_sum and max_abs reassociate and agree to rounding.

#include <cstddef>
#include <span>
#include <string_view>

namespace pballoc::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  std::string_view name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// x *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
  /// out = num / den, with 0 wherever den == 0
  void (*safe_divide)(const double* num, const double* den, double* out, std::size_t n);
  /// Neumaier-compensated sum.
  double (*compensated_sum)(const double* x, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the variant was not compiled in or the CPU lacks the ISA.
const KernelTable* avx2_table() noexcept;

/// The table selected for this process (fixed after the first call).
const KernelTable& active() noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}
inline void scale(double alpha, std::span<double> x) { active().scale(alpha, x.data(), x.size()); }
inline void safe_divide(std::span<const double> num, std::span<const double> den,
                        std::span<double> out) {
  active().safe_divide(num.data(), den.data(), out.data(), out.size());
}
inline double sum(std::span<const double> x) { return active().compensated_sum(x.data(), x.size()); }
inline double max_abs(std::span<const double> x) { return active().max_abs(x.data(), x.size()); }

}  // namespace pballoc::kernels
