#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace binreg {

/// Dense row-major matrix of doubles. Small by construction: the widest
/// design in this project has a few dozen columns.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct WlsSolution {
  std::vector<double> coefficients;
  Matrix covariance;  // (X'WX)^{-1}
  bool rank_ok = true;
};

/// X v.
std::vector<double> mat_vec(const Matrix& x, std::span<const double> v);

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
/// A pivot below `rel_tol` times the largest diagonal entry raises
/// RankDeficientError naming the column (via `labels`, when given).
Matrix cholesky(const Matrix& a, std::span<const std::string> labels = {},
                double rel_tol = 1e-12);

/// Solves (X'WX) beta = X'W z and returns beta with (X'WX)^{-1}.
WlsSolution weighted_least_squares(const Matrix& x, std::span<const double> w,
                                   std::span<const double> z,
                                   std::span<const std::string> labels = {});

}  // namespace binreg
