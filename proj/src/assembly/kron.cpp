#include "q3d/assembly/kron.hpp"

#include <limits>
#include <stdexcept>

namespace q3d {

Eigen::SparseMatrix<double> kron_sparse(const Eigen::SparseMatrix<double>& A,
                                        const Eigen::SparseMatrix<double>& B) {
    const auto max_index = static_cast<long long>(std::numeric_limits<int>::max());
    if (static_cast<long long>(A.rows()) * B.rows() > max_index ||
        static_cast<long long>(A.cols()) * B.cols() > max_index)
        throw std::overflow_error("kron_sparse: result dimensions overflow");

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(A.nonZeros()) * B.nonZeros());
    for (int ka = 0; ka < A.outerSize(); ++ka) {
        for (Eigen::SparseMatrix<double>::InnerIterator ita(A, ka); ita; ++ita) {
            for (int kb = 0; kb < B.outerSize(); ++kb) {
                for (Eigen::SparseMatrix<double>::InnerIterator itb(B, kb); itb; ++itb) {
                    trips.emplace_back(static_cast<int>(ita.row() * B.rows() + itb.row()),
                                       static_cast<int>(ita.col() * B.cols() + itb.col()),
                                       ita.value() * itb.value());
                }
            }
        }
    }
    Eigen::SparseMatrix<double> out(A.rows() * B.rows(), A.cols() * B.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

}  // namespace q3d
