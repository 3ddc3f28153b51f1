#pragma once

#include <Eigen/Sparse>

namespace q3d {

/// Kronecker product of sparse matrices; entry ((ia,ib),(ja,jb)) = A(ia,ja) B(ib,jb)
/// with row index ia * rows(B) + ib.
Eigen::SparseMatrix<double> kron_sparse(const Eigen::SparseMatrix<double>& A,
                                        const Eigen::SparseMatrix<double>& B);

}  // namespace q3d
