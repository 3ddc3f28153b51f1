#pragma once

#include <Eigen/Sparse>

#include <vector>

namespace q3d {

/// Dirichlet constraints over a full DoF vector.
struct Constraints {
    std::vector<char> mask;  // 1 = constrained
    Eigen::VectorXd values;  // prescribed values (zero on free DoFs)

    explicit Constraints(int n) : mask(n, 0), values(Eigen::VectorXd::Zero(n)) {}

    void constrain(int dof, double value) {
        mask[dof] = 1;
        values[dof] = value;
    }
    int size() const { return static_cast<int>(mask.size()); }
    int num_constrained() const;
};

struct ReducedSystem {
    Eigen::SparseMatrix<double> A;
    Eigen::VectorXd b;
    std::vector<int> full_of_free;

    /// Scatter a reduced solution back, filling constrained slots with their
    /// prescribed values.
    Eigen::VectorXd expand(const Eigen::VectorXd& x_free, const Constraints& c) const;
};

/// Row/column elimination with value lift into the right-hand side; symmetry
/// of A is preserved. Throws if a nonzero value is prescribed on a DoF the
/// mask leaves free.
ReducedSystem apply_dirichlet(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                              const std::vector<char>& mask, const Eigen::VectorXd& values);

inline ReducedSystem apply_dirichlet(const Eigen::SparseMatrix<double>& A,
                                     const Eigen::VectorXd& b, const Constraints& c) {
    return apply_dirichlet(A, b, c.mask, c.values);
}

}  // namespace q3d
