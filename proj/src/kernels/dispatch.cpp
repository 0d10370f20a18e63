#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace pballoc::kernels {

namespace {

constexpr KernelTable kScalar{
    Isa::Scalar,          "scalar",           &scalar::dot,     &scalar::axpy,
    &scalar::scale,       &scalar::safe_divide, &scalar::compensated_sum, &scalar::max_abs,
};

#if defined(PBALLOC_HAVE_AVX2)
constexpr KernelTable kAvx2{
    Isa::Avx2,          "avx2",           &avx2::dot,     &avx2::axpy,
    &avx2::scale,       &avx2::safe_divide, &avx2::compensated_sum, &avx2::max_abs,
};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& select() noexcept {
  const char* env = std::getenv("PB_ALLOC_SIMD");
  const std::string_view wanted = env ? env : "auto";
  if (wanted == "scalar") return kScalar;
  if (const KernelTable* simd = avx2_table()) return *simd;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(PBALLOC_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

}  // namespace pballoc::kernels
