#include "binreg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "binreg/error.hpp"

namespace binreg {

namespace {

std::string column_name(std::span<const std::string> labels, std::size_t j) {
  if (j < labels.size()) return labels[j];
  return "column " + std::to_string(j);
}

// Solves L L' x = b in place.
void cholesky_solve(const Matrix& l, std::vector<double>& b) {
  const std::size_t p = l.rows();
  for (std::size_t i = 0; i < p; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b[k];
    b[i] = s / l(i, i);
  }
  for (std::size_t i = p; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < p; ++k) s -= l(k, i) * b[k];
    b[i] = s / l(i, i);
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("Matrix: expected " + std::to_string(rows * cols) +
                         " entries, got " + std::to_string(data_.size()));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> mat_vec(const Matrix& x, std::span<const double> v) {
  if (x.cols() != v.size()) {
    throw DimensionError("mat_vec: matrix has " + std::to_string(x.cols()) +
                         " columns but vector has length " + std::to_string(v.size()));
  }
  std::vector<double> out(x.rows(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto r = x.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) s += r[j] * v[j];
    out[i] = s;
  }
  return out;
}

Matrix cholesky(const Matrix& a, std::span<const std::string> labels, double rel_tol) {
  const std::size_t p = a.rows();
  if (a.cols() != p) throw DimensionError("cholesky: matrix is not square");
  double scale = 0.0;
  for (std::size_t i = 0; i < p; ++i) scale = std::max(scale, a(i, i));

  Matrix l(p, p);
  for (std::size_t j = 0; j < p; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > rel_tol * scale)) {
      const std::string name = column_name(labels, j);
      throw RankDeficientError(
          name, "design is rank deficient: column '" + name +
                    "' is (numerically) a linear combination of earlier columns");
    }
    const double root = std::sqrt(pivot);
    l(j, j) = root;
    for (std::size_t i = j + 1; i < p; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / root;
    }
  }
  return l;
}

WlsSolution weighted_least_squares(const Matrix& x, std::span<const double> w,
                                   std::span<const double> z,
                                   std::span<const std::string> labels) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (w.size() != n || z.size() != n) {
    throw DimensionError("weighted_least_squares: X has " + std::to_string(n) +
                         " rows but weights/response have lengths " + std::to_string(w.size()) +
                         "/" + std::to_string(z.size()));
  }
  if (p == 0 || n < p) {
    throw DimensionError("weighted_least_squares: need n >= p >= 1, got n=" +
                         std::to_string(n) + " p=" + std::to_string(p));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(w[i] > 0.0) || !std::isfinite(w[i])) {
      throw DomainError("weighted_least_squares: weight " + std::to_string(i) +
                        " is not positive and finite");
    }
  }

  // Accumulate X'WX (lower triangle) and X'Wz in row order.
  Matrix xtwx(p, p);
  std::vector<double> xtwz(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = x.row(i);
    for (std::size_t j = 0; j < p; ++j) {
      const double wr = w[i] * r[j];
      if (wr == 0.0) continue;
      xtwz[j] += wr * z[i];
      for (std::size_t k = 0; k <= j; ++k) xtwx(j, k) += wr * r[k];
    }
  }
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = j + 1; k < p; ++k) xtwx(j, k) = xtwx(k, j);
  }

  const Matrix l = cholesky(xtwx, labels);

  WlsSolution sol;
  sol.coefficients = xtwz;
  cholesky_solve(l, sol.coefficients);

  sol.covariance = Matrix(p, p);
  std::vector<double> e(p);
  for (std::size_t j = 0; j < p; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    cholesky_solve(l, e);
    for (std::size_t i = 0; i < p; ++i) sol.covariance(i, j) = e[i];
  }
  // Symmetrize exactly.
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const double avg = 0.5 * (sol.covariance(i, j) + sol.covariance(j, i));
      sol.covariance(i, j) = avg;
      sol.covariance(j, i) = avg;
    }
  }
  sol.rank_ok = true;
  return sol;
}

}  // namespace binreg
