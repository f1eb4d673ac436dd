#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qhess {

/// Dense row-major matrix of doubles. Just enough linear algebra for
/// Hessians, eigenvector tables and the QNG metric solve.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::span<const double> data() const { return a_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  double max_abs_asymmetry() const {
    double m = 0.0;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j) m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
    return m;
  }

  void symmetrize() {
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j) {
        double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
        (*this)(i, j) = v;
        (*this)(j, i) = v;
      }
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

/// Matrix-vector product y = A x.
std::vector<double> matvec(const Matrix& a, std::span<const double> x);

/// Solves A x = b for symmetric positive definite A by Cholesky
/// factorization. Throws std::runtime_error if A is not positive definite.
std::vector<double> solve_spd(Matrix a, std::span<const double> b);

double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace qhess
