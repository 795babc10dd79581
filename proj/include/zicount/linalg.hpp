#pragma once

#include <cstddef>
#include <vector>

namespace zicount {

/// Dense row-major matrix. Everything in this project is tiny (p <= 8), so no
/// attempt is made at blocking or sparsity.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major, rows*cols entries

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool empty() const { return rows == 0 || cols == 0; }

  static Matrix identity(std::size_t n);
};

std::vector<double> matvec(const Matrix& m, const std::vector<double>& x);

/// Inverse of a symmetric positive definite matrix via Cholesky factorization.
/// Throws SingularInformation on a non-positive pivot.
Matrix invert_spd(const Matrix& m);

/// Solve m * x = b for SPD m (Cholesky). Throws SingularInformation.
std::vector<double> solve_spd(const Matrix& m, const std::vector<double>& b);

}  // namespace zicount
