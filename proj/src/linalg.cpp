#include "zicount/linalg.hpp"

#include <cmath>

#include "zicount/errors.hpp"

namespace zicount {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> matvec(const Matrix& m, const std::vector<double>& x) {
  std::vector<double> out(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

namespace {

// Lower-triangular Cholesky factor of a symmetric matrix.
Matrix cholesky(const Matrix& m) {
  const std::size_t n = m.rows;
  if (n != m.cols) throw DomainError("cholesky: matrix not square");
  Matrix L(n, n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw SingularInformation("matrix not positive definite (pivot " +
                                std::to_string(j) + ")");
    }
    L(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return L;
}

// Solve L y = b, then L^T x = y.
std::vector<double> cholesky_solve(const Matrix& L, const std::vector<double>& b) {
  const std::size_t n = L.rows;
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * y[k];
    y[i] = s / L(i, i);
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= L(k, ii) * x[k];
    x[ii] = s / L(ii, ii);
  }
  return x;
}

}  // namespace

Matrix invert_spd(const Matrix& m) {
  const Matrix L = cholesky(m);
  const std::size_t n = m.rows;
  Matrix inv(n, n, 0.0);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    std::vector<double> col = cholesky_solve(L, e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  // enforce exact symmetry against roundoff
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = a;
      inv(j, i) = a;
    }
  return inv;
}

std::vector<double> solve_spd(const Matrix& m, const std::vector<double>& b) {
  return cholesky_solve(cholesky(m), b);
}

}  // namespace zicount
