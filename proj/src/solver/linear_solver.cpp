#include "q3d/solver/linear_solver.hpp"

#include <Eigen/IterativeLinearSolvers>

#include <stdexcept>
#include <string>

namespace q3d {

namespace {

// Max row 1-norm, the natural scale for the backward-error denominator.
double inf_norm(const Eigen::SparseMatrix<double>& a) {
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(a.rows());
    for (int k = 0; k < a.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it)
            row_sums[it.row()] += std::abs(it.value());
    return row_sums.size() ? row_sums.maxCoeff() : 0.0;
}

}  // namespace

void SymmetricSparseSolver::analyze(const Eigen::SparseMatrix<double>& A) {
    ldlt_.analyzePattern(A);
    analyzed_ = true;
}

Eigen::VectorXd SymmetricSparseSolver::solve(const Eigen::SparseMatrix<double>& A,
                                             const Eigen::VectorXd& b) {
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        last_residual_ = 0.0;
        return Eigen::VectorXd::Zero(b.size());
    }
    const double anorm = inf_norm(A);

    // Normwise backward error ||r|| / (||A|| ||x|| + ||b||); the systems here
    // are strongly anisotropic, so a plain ||r||/||b|| has a rounding floor.
    const auto residual = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& r) {
        return r.norm() / (anorm * x.norm() + bnorm);
    };
    // Guards against inconsistent (singular) systems, where the backward
    // error alone can be driven down by letting ||x|| grow.
    const auto accepted = [&](double backward, const Eigen::VectorXd& r) {
        return backward <= kResidualTol && r.norm() <= 1e-6 * bnorm;
    };

    if (!analyzed_) analyze(A);
    ldlt_.factorize(A);

    Eigen::VectorXd x;
    if (ldlt_.info() == Eigen::Success) {
        x = ldlt_.solve(b);
        for (int pass = 0; pass < 3; ++pass) {
            const Eigen::VectorXd r = b - A * x;
            last_residual_ = residual(x, r);
            if (accepted(last_residual_, r)) return x;
            x += ldlt_.solve(r);
        }
        const Eigen::VectorXd r = b - A * x;
        last_residual_ = residual(x, r);
        if (accepted(last_residual_, r)) return x;
    } else {
        x = Eigen::VectorXd::Zero(b.size());
        last_residual_ = 1.0;
    }

    // Factorization failed or refinement stalled: diagonally preconditioned CG.
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.setTolerance(0.1 * kResidualTol);
    cg.setMaxIterations(20 * A.rows());
    cg.compute(A);
    x = cg.solveWithGuess(b, x);
    const Eigen::VectorXd r = b - A * x;
    last_residual_ = residual(x, r);
    if (!accepted(last_residual_, r)) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3e", last_residual_);
        throw std::runtime_error(
            std::string("SymmetricSparseSolver: solve failed, relative residual ") + buf);
    }
    return x;
}

}  // namespace q3d
