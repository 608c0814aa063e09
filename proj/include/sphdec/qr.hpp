#pragma once

#include <vector>

#include "sphdec/matrix.hpp"
#include "sphdec/op_counts.hpp"

namespace sphdec {

// QR factorization of a column permutation of the input: q * r_mat
// reconstructs m with columns reordered by perm, where perm[k] is the
// original index of the column at permuted position k. Diagonal phases
// are absorbed into q so every r_mat(i, i) is real and nonnegative.
struct QrFactorization {
  ComplexMatrix q;        // r x r unitary
  ComplexMatrix r_mat;    // r x t upper triangular, real nonnegative diagonal
  std::vector<int> perm;  // permuted-column index -> original column index
};

enum class NormOrder { Ascending, Descending };

// Plain Householder QR, identity permutation. Requires rows >= cols >= 1;
// throws RankDeficient when a diagonal falls below 1e-12 * ||m||_F.
QrFactorization householder_qr(const ComplexMatrix& m, OpCounts& counts);

// Householder QR with column sort: before each elimination step the
// remaining column of minimum residual norm is moved into pivot
// position, minimizing each r_ii in turn (ties: lowest original index).
QrFactorization sorted_qr(const ComplexMatrix& m, OpCounts& counts);

// Columns presorted by Euclidean norm (ascending by default, so the
// largest-norm column is decided first during search), then plain QR.
QrFactorization norm_ordered_qr(const ComplexMatrix& m, OpCounts& counts,
                                NormOrder order = NormOrder::Ascending);

// Permutation maximizing min_i r_ii over all column orders, found
// greedily from the last position down: each step keeps, for the latest
// undecided position, the remaining column with the largest component
// orthogonal to the span of the other remaining columns (ties: highest
// original index, so fully tied inputs keep their order).
QrFactorization optimal_qr(const ComplexMatrix& m, OpCounts& counts);

// The four ordering strategies behind one name.
enum class Ordering { Plain, Norm, NormDescending, Optimal, QrSort };

QrFactorization factorize(const ComplexMatrix& m, Ordering ordering, OpCounts& counts);

}  // namespace sphdec
