#pragma once

// Reference computations written without the library's solvers or kernels.
// Plain loops, no pivoting tricks, no blocking: slow and obviously right.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pballoc/linalg.hpp"
#include "pballoc/mrio.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense to_dense(const pballoc::Matrix& m) {
  Dense d(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
  return d;
}

inline Dense matmul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Dense c(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][p] * b[p][j];
  return c;
}

inline double max_abs(const Dense& a) {
  double m = 0.0;
  for (const auto& r : a)
    for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

/// L = I + A + A^2 + ... until the next term is negligible relative to the sum.
inline Dense leontief_power_series(const Dense& a, int max_terms = 20000) {
  const std::size_t n = a.size();
  Dense sum(n, std::vector<double>(n, 0.0));
  Dense term(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) sum[i][i] = term[i][i] = 1.0;
  for (int k = 0; k < max_terms; ++k) {
    term = matmul(term, a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum[i][j] += term[i][j];
    if (max_abs(term) <= 1e-18 * max_abs(sum)) break;
  }
  return sum;
}

inline Dense coefficients(const pballoc::MrioTable& t) {
  Dense a = to_dense(t.z);
  for (std::size_t j = 0; j < t.size(); ++j)
    for (std::size_t i = 0; i < t.size(); ++i) a[i][j] = t.x[j] > 0.0 ? a[i][j] / t.x[j] : 0.0;
  return a;
}

struct Footprint {
  Dense e;  // producer region x consumer region
  std::vector<double> pba, cba;
};

/// E_rs = sum_{i in r} q_i sum_j L_ij Y_js, with L from the power series.
inline Footprint footprint(const pballoc::MrioTable& t, const pballoc::ExtensionAccount& ext) {
  const std::size_t nm = t.size(), n = t.n_regions();
  const Dense l = leontief_power_series(oracle::coefficients(t));
  Footprint out;
  out.e.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < nm; ++i) {
    const double q = t.x[i] > 0.0 ? ext.f[i] / t.x[i] : 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      double ly = 0.0;
      for (std::size_t j = 0; j < nm; ++j) ly += l[i][j] * t.y(j, s);
      out.e[t.region_of(i)][s] += q * ly;
    }
  }
  out.pba.assign(n, 0.0);
  out.cba.assign(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      out.pba[r] += out.e[r][s];
      out.cba[s] += out.e[r][s];
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    out.pba[r] += ext.f_hh[r];
    out.cba[r] += ext.f_hh[r];
  }
  return out;
}

/// Mean absolute difference over all ordered pairs divided by twice the mean.
inline double gini_pairwise(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  long double diff = 0.0L, total = 0.0L;
  for (double a : v) {
    total += a;
    for (double b : v) diff += std::fabs(static_cast<long double>(a) - b);
  }
  return static_cast<double>(diff / (2.0L * n * total));
}

inline double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

}  // namespace oracle
