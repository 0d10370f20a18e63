// Compiled with -mavx2 -mfma -ffp-contract=off. Only reached through the
// dispatch table after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace pballoc::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
  for (; i < n; ++i) x[i] *= alpha;
}

void safe_divide(const double* num, const double* den, double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(den + i);
    const __m256d is_zero = _mm256_cmp_pd(d, zero, _CMP_EQ_OQ);
    // Substitute 1 for zero denominators so no lane raises divide-by-zero.
    const __m256d safe_d = _mm256_blendv_pd(d, one, is_zero);
    const __m256d q = _mm256_div_pd(_mm256_loadu_pd(num + i), safe_d);
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(q, zero, is_zero));
  }
  for (; i < n; ++i) out[i] = den[i] == 0.0 ? 0.0 : num[i] / den[i];
}

double compensated_sum(const double* x, std::size_t n) {
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d t = _mm256_add_pd(s, v);
    const __m256d s_big = _mm256_cmp_pd(vabs(s), vabs(v), _CMP_GE_OQ);
    const __m256d when_s_big = _mm256_add_pd(_mm256_sub_pd(s, t), v);
    const __m256d when_v_big = _mm256_add_pd(_mm256_sub_pd(v, t), s);
    c = _mm256_add_pd(c, _mm256_blendv_pd(when_v_big, when_s_big, s_big));
    s = t;
  }

  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, s);
  double total = 0.0;
  double comp = hsum(c);
  auto accumulate = [&](double v) {
    const double t = total + v;
    if (std::fabs(total) >= std::fabs(v)) {
      comp += (total - t) + v;
    } else {
      comp += (v - t) + total;
    }
    total = t;
  };
  for (double lane : lanes) accumulate(lane);
  for (; i < n; ++i) accumulate(x[i]);
  return total + comp;
}

double max_abs(const double* x, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, vabs(_mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double out = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
  for (; i < n; ++i) out = std::fmax(out, std::fabs(x[i]));
  return out;
}

}  // namespace pballoc::kernels::avx2
