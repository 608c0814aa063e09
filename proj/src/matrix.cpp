#include "sphdec/matrix.hpp"

#include <cmath>

namespace sphdec {

bool is_finite(const ComplexMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!is_finite(m(i, j))) return false;
  return true;
}

bool is_finite(const ComplexVector& v) {
  for (const Complex& z : v)
    if (!is_finite(z)) return false;
  return true;
}

ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v) {
  if (static_cast<int>(v.size()) != m.cols())
    throw DimensionError("matvec: size mismatch");
  ComplexVector out(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    Complex acc{0.0, 0.0};
    for (int j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: size mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(j, i) = conj(m(i, j));
  return out;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += abs2(m(i, j));
  return std::sqrt(s);
}

ComplexMatrix permute_cols(const ComplexMatrix& m, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != m.cols())
    throw LengthMismatch("permute_cols: permutation length mismatch");
  ComplexMatrix out(m.rows(), m.cols());
  for (int k = 0; k < m.cols(); ++k)
    for (int i = 0; i < m.rows(); ++i) out(i, k) = m(i, perm[k]);
  return out;
}

ComplexVector apply_inverse_permutation(const ComplexVector& v, const std::vector<int>& perm) {
  if (v.size() != perm.size())
    throw LengthMismatch("apply_inverse_permutation: length mismatch");
  ComplexVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(perm[i])] = v[i];
  return out;
}

}  // namespace sphdec
