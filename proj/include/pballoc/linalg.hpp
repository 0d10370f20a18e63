#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pballoc {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Vector column_sums() const;
  Vector row_sums() const;
  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, std::span<const double> x);
/// Row vector times matrix: x' A.
Vector multiply(std::span<const double> x, const Matrix& a);

/// LU factorization with partial pivoting, P M = L U.
///
/// Factor once, solve many right-hand sides. Throws NonProductiveEconomy when
/// a pivot underflows relative to the matrix scale.
class LuFactorization {
 public:
  explicit LuFactorization(Matrix m);

  std::size_t size() const noexcept { return lu_.rows(); }

  /// Solves M X = B for every column of B.
  Matrix solve(const Matrix& b) const;
  /// Solves M x = b.
  Vector solve(std::span<const double> b) const;
  /// Solves M' z = b, i.e. z' = b' M^{-1}.
  Vector solve_transposed(std::span<const double> b) const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
};

}  // namespace pballoc
