#include "pballoc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "pballoc/error.hpp"
#include "pballoc/kernels.hpp"

namespace pballoc {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::column_sums() const {
  Vector sums(cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) kernels::axpy(1.0, row(r), sums);
  return sums;
}

Vector Matrix::row_sums() const {
  Vector sums(rows_);
  for (std::size_t r = 0; r < rows_; ++r) sums[r] = kernels::sum(row(r));
  return sums;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::Structural, "matrix product of " + std::to_string(a.rows()) + "x" +
                                           std::to_string(a.cols()) + " and " +
                                           std::to_string(b.rows()) + "x" +
                                           std::to_string(b.cols()));
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik != 0.0) kernels::axpy(aik, b.row(k), out);
    }
  }
  return c;
}

Vector multiply(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorKind::Structural, "matrix-vector size mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = kernels::dot(a.row(i), x);
  return y;
}

Vector multiply(std::span<const double> x, const Matrix& a) {
  if (a.rows() != x.size()) throw Error(ErrorKind::Structural, "vector-matrix size mismatch");
  Vector y(a.cols(), 0.0);
  for (std::size_t k = 0; k < a.rows(); ++k) {
    if (x[k] != 0.0) kernels::axpy(x[k], a.row(k), y);
  }
  return y;
}

LuFactorization::LuFactorization(Matrix m) : lu_(std::move(m)), perm_(lu_.rows()) {
  if (!lu_.square()) throw Error(ErrorKind::Structural, "LU factorization needs a square matrix");
  const std::size_t n = lu_.rows();
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  const double scale = std::max(kernels::max_abs(lu_.data()), 1.0);
  const double tiny = scale * 1e-14;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::fabs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(lu_(i, k)) > best) {
        best = std::fabs(lu_(i, k));
        pivot = i;
      }
    }
    if (!(best > tiny)) {
      throw Error(ErrorKind::NonProductiveEconomy,
                  "matrix is singular at column " + std::to_string(k));
    }
    if (pivot != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(pivot).begin());
      std::swap(perm_[k], perm_[pivot]);
    }
    const double diag = lu_(k, k);
    const auto pivot_tail = lu_.row(k).subspan(k + 1);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = lu_(i, k) / diag;
      lu_(i, k) = factor;
      if (factor != 0.0) kernels::axpy(-factor, pivot_tail, lu_.row(i).subspan(k + 1));
    }
  }
}

Matrix LuFactorization::solve(const Matrix& b) const {
  const std::size_t n = size();
  if (b.rows() != n) throw Error(ErrorKind::Structural, "right-hand side has wrong row count");
  Matrix x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = b.row(perm_[i]);
    std::copy(src.begin(), src.end(), x.row(i).begin());
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      const double l = lu_(i, k);
      if (l != 0.0) kernels::axpy(-l, x.row(k), x.row(i));
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double u = lu_(i, k);
      if (u != 0.0) kernels::axpy(-u, x.row(k), x.row(i));
    }
    kernels::scale(1.0 / lu_(i, i), x.row(i));
  }
  return x;
}

Vector LuFactorization::solve(std::span<const double> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw Error(ErrorKind::Structural, "right-hand side has wrong length");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 1; i < n; ++i) x[i] -= kernels::dot(lu_.row(i).first(i), {x.data(), i});
  for (std::size_t i = n; i-- > 0;) {
    const auto upper = lu_.row(i).subspan(i + 1);
    x[i] = (x[i] - kernels::dot(upper, {x.data() + i + 1, n - i - 1})) / lu_(i, i);
  }
  return x;
}

Vector LuFactorization::solve_transposed(std::span<const double> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw Error(ErrorKind::Structural, "right-hand side has wrong length");
  // U' w = b, column-oriented so each update is a contiguous row of U.
  Vector w(b.begin(), b.end());
  for (std::size_t j = 0; j < n; ++j) {
    w[j] /= lu_(j, j);
    if (w[j] != 0.0 && j + 1 < n) {
      kernels::axpy(-w[j], lu_.row(j).subspan(j + 1), std::span<double>(w).subspan(j + 1));
    }
  }
  // L' v = w, unit diagonal.
  for (std::size_t j = n; j-- > 1;) {
    if (w[j] != 0.0) kernels::axpy(-w[j], lu_.row(j).first(j), std::span<double>(w).first(j));
  }
  Vector z(n);
  for (std::size_t i = 0; i < n; ++i) z[perm_[i]] = w[i];
  return z;
}

}  // namespace pballoc
