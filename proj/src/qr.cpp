#include "sphdec/qr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace sphdec {

namespace {

struct Reflector {
  ComplexVector v;     // pivot tail, length rows - offset
  double beta = 0.0;   // 2 / (v^H v)
  int offset = 0;      // first affected row
};

void validate_input(const ComplexMatrix& m) {
  if (m.rows() < m.cols() || m.cols() < 1)
    throw DimensionError("qr: need rows >= cols >= 1");
  if (!is_finite(m)) throw DimensionError("qr: non-finite entry");
}

// sum_{k >= step} |a(k, j)|^2, through the cost model.
double residual_norm_sq(const ComplexMatrix& a, int step, int j, OpCounts& n) {
  double s = counted_abs2(a(step, j), n);
  for (int k = step + 1; k < a.rows(); ++k)
    s = counted_radd(s, counted_abs2(a(k, j), n), n);
  return s;
}

// Builds the reflector annihilating column `step` below the diagonal and
// writes alpha = -||x|| * phase(x1) into the pivot slot. `sigma` is the
// pivot residual norm squared, already computed.
Reflector make_reflector(ComplexMatrix& a, int step, double sigma, Complex& phase_out,
                         OpCounts& n) {
  const Complex x1 = a(step, step);
  const double x1_abs2 = counted_abs2(x1, n);
  const double x1_abs = std::sqrt(x1_abs2);
  const double col_norm = std::sqrt(sigma);

  Complex phase{1.0, 0.0};
  if (x1_abs > 0.0)
    phase = {counted_rdiv(x1.re, x1_abs, n), counted_rdiv(x1.im, x1_abs, n)};
  const Complex alpha = -counted_cscale(col_norm, phase, n);

  Reflector refl;
  refl.offset = step;
  refl.v.resize(a.rows() - step);
  refl.v[0] = counted_csub(x1, alpha, n);
  for (int k = step + 1; k < a.rows(); ++k) refl.v[k - step] = a(k, step);

  // v^H v = sigma - |x1|^2 + |v1|^2; v1 never cancels with this sign choice.
  const double vhv =
      counted_radd(counted_rsub(sigma, x1_abs2, n), counted_abs2(refl.v[0], n), n);
  refl.beta = counted_rdiv(2.0, vhv, n);

  a(step, step) = alpha;
  for (int k = step + 1; k < a.rows(); ++k) a(k, step) = Complex{0.0, 0.0};
  phase_out = phase;
  return refl;
}

// col_j <- (I - beta v v^H) col_j on rows offset..r-1.
void apply_reflector(ComplexMatrix& mtx, const Reflector& refl, int j, OpCounts& n) {
  const int i0 = refl.offset;
  const int len = static_cast<int>(refl.v.size());
  Complex w = counted_cmul(conj(refl.v[0]), mtx(i0, j), n);
  for (int k = 1; k < len; ++k)
    w = counted_cadd(w, counted_cmul(conj(refl.v[k]), mtx(i0 + k, j), n), n);
  const Complex s = counted_cscale(refl.beta, w, n);
  for (int k = 0; k < len; ++k)
    mtx(i0 + k, j) = counted_csub(mtx(i0 + k, j), counted_cmul(s, refl.v[k], n), n);
}

enum class Pivot { None, MinResidual };

QrFactorization factor_core(const ComplexMatrix& m, Pivot pivot, OpCounts& n) {
  const int r = m.rows();
  const int t = m.cols();
  const double rank_tol = 1e-12 * frobenius_norm(m);  // input validation only

  ComplexMatrix a = m;
  std::vector<int> perm(t);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Reflector> reflectors;
  reflectors.reserve(t);
  std::vector<Complex> phases(t);
  std::vector<double> diag_norms(t);

  for (int i = 0; i < t; ++i) {
    double sigma;
    if (pivot == Pivot::MinResidual) {
      int best = i;
      double best_norm = residual_norm_sq(a, i, i, n);
      for (int j = i + 1; j < t; ++j) {
        const double norm_j = residual_norm_sq(a, i, j, n);
        if (norm_j < best_norm || (norm_j == best_norm && perm[j] < perm[best])) {
          best = j;
          best_norm = norm_j;
        }
      }
      if (best != i) {
        a.swap_cols(i, best);
        std::swap(perm[i], perm[best]);
      }
      sigma = best_norm;
    } else {
      sigma = residual_norm_sq(a, i, i, n);
    }

    diag_norms[i] = std::sqrt(sigma);
    if (diag_norms[i] <= rank_tol) throw RankDeficient("qr: rank-deficient input");

    reflectors.push_back(make_reflector(a, i, sigma, phases[i], n));
    for (int j = i + 1; j < t; ++j) apply_reflector(a, reflectors.back(), j, n);
  }

  QrFactorization out;
  out.perm = std::move(perm);
  out.r_mat = ComplexMatrix(r, t);
  for (int i = 0; i < std::min(r, t); ++i)
    for (int j = i; j < t; ++j) out.r_mat(i, j) = a(i, j);

  // Q = H_0 ... H_{t-1}, accumulated backward; H_i only touches
  // rows/columns i..r-1 of the identity.
  out.q = ComplexMatrix::identity(r);
  for (int i = t - 1; i >= 0; --i)
    for (int j = i; j < r; ++j) apply_reflector(out.q, reflectors[i], j, n);

  // Absorb diagonal phases into Q so r_ii = ||column residual|| >= 0.
  // alpha_i = -diag_norms[i] * phases[i], so scale row i of R by
  // -conj(phases[i]) and column i of Q by -phases[i].
  for (int i = 0; i < t; ++i) {
    const Complex row_scale = -conj(phases[i]);
    for (int j = i + 1; j < t; ++j)
      out.r_mat(i, j) = counted_cmul(row_scale, out.r_mat(i, j), n);
    out.r_mat(i, i) = Complex{diag_norms[i], 0.0};
    const Complex col_scale = -phases[i];
    for (int k = 0; k < r; ++k)
      out.q(k, i) = counted_cmul(out.q(k, i), col_scale, n);
  }
  return out;
}

// Squared norm of the last column's component orthogonal to the span of
// the preceding columns: eliminate the others, then measure the tail.
double orth_residual_sq(const ComplexMatrix& cols, OpCounts& n) {
  ComplexMatrix a = cols;
  const int k = a.cols();
  for (int s = 0; s + 1 < k; ++s) {
    const double sigma = residual_norm_sq(a, s, s, n);
    if (sigma == 0.0) continue;  // zero column spans nothing
    Complex phase;
    const Reflector refl = make_reflector(a, s, sigma, phase, n);
    for (int j = s + 1; j < k; ++j) apply_reflector(a, refl, j, n);
  }
  return residual_norm_sq(a, k - 1, k - 1, n);
}

}  // namespace

QrFactorization householder_qr(const ComplexMatrix& m, OpCounts& counts) {
  validate_input(m);
  return factor_core(m, Pivot::None, counts);
}

QrFactorization sorted_qr(const ComplexMatrix& m, OpCounts& counts) {
  validate_input(m);
  return factor_core(m, Pivot::MinResidual, counts);
}

QrFactorization norm_ordered_qr(const ComplexMatrix& m, OpCounts& counts, NormOrder order) {
  validate_input(m);
  const int t = m.cols();

  std::vector<double> norms(t);
  for (int j = 0; j < t; ++j) norms[j] = residual_norm_sq(m, 0, j, counts);

  std::vector<int> perm(t);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    return order == NormOrder::Ascending ? norms[a] < norms[b] : norms[a] > norms[b];
  });

  QrFactorization out = factor_core(permute_cols(m, perm), Pivot::None, counts);
  out.perm = perm;
  return out;
}

QrFactorization optimal_qr(const ComplexMatrix& m, OpCounts& counts) {
  validate_input(m);
  const int r = m.rows();
  const int t = m.cols();

  std::vector<int> remaining(t);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<int> perm(t);

  for (int pos = t - 1; pos >= 1; --pos) {
    int best_idx = -1;
    int best_col = -1;
    double best_res = -1.0;
    for (std::size_t idx = 0; idx < remaining.size(); ++idx) {
      const int candidate = remaining[idx];
      // Candidate goes last so its orthogonal component is the tail left
      // after eliminating every other remaining column.
      ComplexMatrix scratch(r, static_cast<int>(remaining.size()));
      int col = 0;
      for (int other : remaining) {
        if (other == candidate) continue;
        for (int row = 0; row < r; ++row) scratch(row, col) = m(row, other);
        ++col;
      }
      for (int row = 0; row < r; ++row) scratch(row, col) = m(row, candidate);

      const double res = orth_residual_sq(scratch, counts);
      // Ties keep the highest original index at the latest position,
      // so fully tied inputs come out in identity order.
      if (res > best_res || (res == best_res && candidate > best_col)) {
        best_idx = static_cast<int>(idx);
        best_col = candidate;
        best_res = res;
      }
    }
    perm[pos] = best_col;
    remaining.erase(remaining.begin() + best_idx);
  }
  perm[0] = remaining.front();

  QrFactorization out = factor_core(permute_cols(m, perm), Pivot::None, counts);
  out.perm = perm;
  return out;
}

QrFactorization factorize(const ComplexMatrix& m, Ordering ordering, OpCounts& counts) {
  switch (ordering) {
    case Ordering::Plain:
      return householder_qr(m, counts);
    case Ordering::Norm:
      return norm_ordered_qr(m, counts, NormOrder::Ascending);
    case Ordering::NormDescending:
      return norm_ordered_qr(m, counts, NormOrder::Descending);
    case Ordering::Optimal:
      return optimal_qr(m, counts);
    case Ordering::QrSort:
      return sorted_qr(m, counts);
  }
  throw DimensionError("factorize: unknown ordering");
}

}  // namespace sphdec
