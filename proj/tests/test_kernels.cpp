#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "pballoc/kernels.hpp"

using namespace pballoc::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  }
  return true;
}

// Lengths straddle the 4-wide vector body and its scalar tail.
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 1000, 1023};

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    avx2 = avx2_table();
    if (!avx2) GTEST_SKIP() << "AVX2 variant not available on this machine";
  }
  const KernelTable& scalar = scalar_table();
  const KernelTable* avx2 = nullptr;
};

}  // namespace

TEST(Kernels, ScalarReferenceValues) {
  const auto& k = scalar_table();
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{5, 4, 3, 2, 1};
  EXPECT_EQ(k.dot(a.data(), b.data(), a.size()), 35.0);
  EXPECT_EQ(k.max_abs(b.data(), b.size()), 5.0);
  EXPECT_EQ(k.compensated_sum(a.data(), a.size()), 15.0);

  // Neumaier recovers the small terms that naive summation drops.
  const std::vector<double> c{1.0, 1e100, 1.0, -1e100};
  EXPECT_EQ(k.compensated_sum(c.data(), c.size()), 2.0);

  std::vector<double> out(3);
  const std::vector<double> num{1.0, 2.0, 3.0};
  const std::vector<double> den{2.0, 0.0, -3.0};
  k.safe_divide(num.data(), den.data(), out.data(), 3);
  EXPECT_EQ(out, (std::vector<double>{0.5, 0.0, -1.0}));
}

TEST(Kernels, ActiveTableIsStable) {
  const auto& first = active();
  EXPECT_EQ(&first, &active());
  EXPECT_FALSE(first.name.empty());
}

TEST_F(KernelEquivalence, AxpyBitIdentical) {
  std::mt19937_64 rng(11);
  for (std::size_t n : kLengths) {
    const auto x = random_vector(rng, n, -1e3, 1e3);
    auto y1 = random_vector(rng, n, -1e3, 1e3);
    auto y2 = y1;
    scalar.axpy(0.3711, x.data(), y1.data(), n);
    avx2->axpy(0.3711, x.data(), y2.data(), n);
    EXPECT_TRUE(bit_equal(y1, y2)) << "n=" << n;
  }
}

TEST_F(KernelEquivalence, ScaleBitIdentical) {
  std::mt19937_64 rng(12);
  for (std::size_t n : kLengths) {
    auto x1 = random_vector(rng, n, -1e6, 1e6);
    auto x2 = x1;
    scalar.scale(1.0 / 3.0, x1.data(), n);
    avx2->scale(1.0 / 3.0, x2.data(), n);
    EXPECT_TRUE(bit_equal(x1, x2)) << "n=" << n;
  }
}

TEST_F(KernelEquivalence, SafeDivideBitIdentical) {
  std::mt19937_64 rng(13);
  for (std::size_t n : kLengths) {
    const auto num = random_vector(rng, n, -10, 10);
    auto den = random_vector(rng, n, -10, 10);
    for (std::size_t i = 0; i < n; i += 3) den[i] = 0.0;
    if (n > 1) den[1] = -0.0;
    std::vector<double> o1(n), o2(n);
    scalar.safe_divide(num.data(), den.data(), o1.data(), n);
    avx2->safe_divide(num.data(), den.data(), o2.data(), n);
    EXPECT_TRUE(bit_equal(o1, o2)) << "n=" << n;
    for (std::size_t i = 0; i < n; ++i) {
      if (den[i] == 0.0) {
        EXPECT_EQ(o1[i], 0.0);
      }
    }
  }
}

TEST_F(KernelEquivalence, ReductionsAgreeToRounding) {
  std::mt19937_64 rng(14);
  for (std::size_t n : kLengths) {
    const auto a = random_vector(rng, n, -1.0, 1.0);
    const auto b = random_vector(rng, n, -1.0, 1.0);
    double abs_dot = 0.0, abs_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      abs_dot += std::abs(a[i] * b[i]);
      abs_sum += std::abs(a[i]);
    }
    const double eps = std::numeric_limits<double>::epsilon();
    EXPECT_NEAR(scalar.dot(a.data(), b.data(), n), avx2->dot(a.data(), b.data(), n),
                2.0 * static_cast<double>(n) * eps * abs_dot + 1e-300);
    EXPECT_NEAR(scalar.compensated_sum(a.data(), n), avx2->compensated_sum(a.data(), n),
                4.0 * eps * abs_sum + 1e-300);
    EXPECT_EQ(scalar.max_abs(a.data(), n), avx2->max_abs(a.data(), n));
  }
}

TEST_F(KernelEquivalence, CompensatedSumHandlesCancellation) {
  std::vector<double> v;
  for (int i = 0; i < 101; ++i) {
    v.push_back(1e16);
    v.push_back(1.0);
    v.push_back(-1e16);
  }
  EXPECT_EQ(scalar.compensated_sum(v.data(), v.size()), 101.0);
  EXPECT_EQ(avx2->compensated_sum(v.data(), v.size()), 101.0);
}
