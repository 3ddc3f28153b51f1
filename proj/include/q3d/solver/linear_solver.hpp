#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace q3d {

/// Symmetric sparse solve contract: LDLT factorization with iterative
/// refinement, diagonally preconditioned CG as fallback; the relative
/// residual (normwise backward error ||r|| / (||A|| ||x|| + ||b||)) must
/// reach 1e-10 or the solve throws.
class SymmetricSparseSolver {
public:
    static constexpr double kResidualTol = 1e-10;

    /// Symbolic analysis; reusable while the sparsity pattern is unchanged.
    void analyze(const Eigen::SparseMatrix<double>& A);

    Eigen::VectorXd solve(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b);

    double last_residual() const { return last_residual_; }

private:
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower,
                          Eigen::AMDOrdering<int>>
        ldlt_;
    bool analyzed_ = false;
    double last_residual_ = 0.0;
};

}  // namespace q3d
