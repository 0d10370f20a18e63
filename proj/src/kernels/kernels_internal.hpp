#pragma once

#include <cstddef>

#include "pballoc/kernels.hpp"

namespace pballoc::kernels {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
void safe_divide(const double* num, const double* den, double* out, std::size_t n);
double compensated_sum(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
}  // namespace scalar

#if defined(PBALLOC_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
void safe_divide(const double* num, const double* den, double* out, std::size_t n);
double compensated_sum(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace pballoc::kernels
