#include "q3d/assembly/dirichlet.hpp"

#include <numeric>
#include <stdexcept>

namespace q3d {

int Constraints::num_constrained() const {
    return static_cast<int>(std::accumulate(mask.begin(), mask.end(), 0));
}

Eigen::VectorXd ReducedSystem::expand(const Eigen::VectorXd& x_free,
                                      const Constraints& c) const {
    Eigen::VectorXd full = c.values;
    for (std::size_t i = 0; i < full_of_free.size(); ++i) full[full_of_free[i]] = x_free[i];
    return full;
}

ReducedSystem apply_dirichlet(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                              const std::vector<char>& mask, const Eigen::VectorXd& values) {
    const int n = static_cast<int>(A.rows());
    if (A.cols() != n || b.size() != n || static_cast<int>(mask.size()) != n ||
        values.size() != n)
        throw std::invalid_argument("apply_dirichlet: size mismatch");
    for (int i = 0; i < n; ++i)
        if (!mask[i] && values[i] != 0.0)
            throw std::invalid_argument("apply_dirichlet: value prescribed on unconstrained DoF " +
                                        std::to_string(i));

    ReducedSystem out;
    std::vector<int> free_of_full(n, -1);
    for (int i = 0; i < n; ++i) {
        if (!mask[i]) {
            free_of_full[i] = static_cast<int>(out.full_of_free.size());
            out.full_of_free.push_back(i);
        }
    }
    const int nf = static_cast<int>(out.full_of_free.size());

    out.b = Eigen::VectorXd::Zero(nf);
    for (int i = 0; i < nf; ++i) out.b[i] = b[out.full_of_free[i]];

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(A.nonZeros()));
    for (int k = 0; k < A.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
            const int r = static_cast<int>(it.row());
            const int c = static_cast<int>(it.col());
            if (!mask[r] && !mask[c]) {
                trips.emplace_back(free_of_full[r], free_of_full[c], it.value());
            } else if (!mask[r] && mask[c] && values[c] != 0.0) {
                out.b[free_of_full[r]] -= it.value() * values[c];
            }
        }
    }
    out.A.resize(nf, nf);
    out.A.setFromTriplets(trips.begin(), trips.end());
    return out;
}

}  // namespace q3d
