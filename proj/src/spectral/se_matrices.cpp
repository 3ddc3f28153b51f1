#include "q3d/spectral/se_matrices.hpp"

#include "q3d/spectral/lobatto.hpp"
#include "q3d/spectral/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace q3d {

namespace {

void check_element(double h, const ReferenceTensorSet& tensors, int order) {
    if (!(h > 0.0)) throw std::invalid_argument("se_matrices: element length must be positive");
    if (order < 1 || order > tensors.max_basis_order())
        throw std::invalid_argument("se_matrices: order exceeds reference tensor P_max");
}

}  // namespace

SEMatrices se_matrices_constant(double alpha, double h, const ReferenceTensorSet& tensors,
                                int order) {
    check_element(h, tensors, order);
    if (!std::isfinite(alpha))
        throw std::invalid_argument("se_matrices_constant: coefficient must be finite");
    const auto n = order + 1;
    // Same operation order as the contraction path, so a pure-T_0 coefficient
    // vector reproduces these matrices bit-exactly.
    SEMatrices out;
    out.K = alpha * tensors.K(0).topLeftCorner(n, n);
    out.K *= 2.0 / h;
    out.M = alpha * tensors.M(0).topLeftCorner(n, n);
    out.M *= h / 2.0;
    out.D = alpha * tensors.D(0).topLeftCorner(n, n);
    return out;
}

SEMatrices se_matrices_contracted(const Eigen::VectorXd& cheb_coeffs, double h,
                                  const ReferenceTensorSet& tensors, int order) {
    check_element(h, tensors, order);
    const int m_count = static_cast<int>(cheb_coeffs.size());
    if (m_count > tensors.max_cheb_order() + 1)
        throw std::invalid_argument(
            "se_matrices_contracted: Chebyshev order exceeds tensor cache M_max; rebuild the "
            "cache with a larger --mmax");
    const auto n = order + 1;
    SEMatrices out;
    out.K = Eigen::MatrixXd::Zero(n, n);
    out.M = Eigen::MatrixXd::Zero(n, n);
    out.D = Eigen::MatrixXd::Zero(n, n);
    for (int m = 0; m < m_count; ++m) {
        const double c = cheb_coeffs[m];
        if (c == 0.0) continue;
        out.K += c * tensors.K(m).topLeftCorner(n, n);
        out.M += c * tensors.M(m).topLeftCorner(n, n);
        out.D += c * tensors.D(m).topLeftCorner(n, n);
    }
    out.K *= 2.0 / h;
    out.M *= h / 2.0;
    return out;
}

Eigen::VectorXd se_load_uniform(double h, int order) {
    if (!(h > 0.0)) throw std::invalid_argument("se_load_uniform: element length must be positive");
    if (order < 1) throw std::invalid_argument("se_load_uniform: order must be >= 1");
    const QuadratureRule rule = gauss_legendre(order / 2 + 2);
    Eigen::VectorXd load = Eigen::VectorXd::Zero(order + 1);
    for (int i = 0; i < rule.size(); ++i)
        load += (0.5 * h * rule.weights[i]) * lobatto_all(order, rule.nodes[i]);
    return load;
}

}  // namespace q3d
