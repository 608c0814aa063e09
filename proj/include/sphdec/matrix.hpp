#pragma once

#include <vector>

#include "sphdec/complex.hpp"
#include "sphdec/errors.hpp"

namespace sphdec {

using ComplexVector = std::vector<Complex>;

// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Complex{1.0, 0.0};
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  void swap_cols(int a, int b) {
    for (int i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  ComplexVector col(int j) const {
    ComplexVector v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> entries_;
};

bool is_finite(const ComplexMatrix& m);
bool is_finite(const ComplexVector& v);

// Uncounted helpers for simulation, oracles and tests. Decoder code
// paths use the counted kernels in qr.cpp / search.cpp instead.
ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);

// Reorders columns so that out(:, k) = m(:, perm[k]).
ComplexMatrix permute_cols(const ComplexMatrix& m, const std::vector<int>& perm);

// Undoes a column permutation on a decided symbol vector:
// out[perm[i]] = v[i]. Throws LengthMismatch when sizes differ.
ComplexVector apply_inverse_permutation(const ComplexVector& v, const std::vector<int>& perm);

}  // namespace sphdec
