#pragma once

#include "q3d/spectral/reference_tensors.hpp"

#include <Eigen/Dense>

namespace q3d {

/// Element-local 1D spectral matrices (stiffness, mass, damping). The damping
/// matrix carries the derivative on the trial (column) index.
struct SEMatrices {
    Eigen::MatrixXd K;
    Eigen::MatrixXd M;
    Eigen::MatrixXd D;
};

/// Constant-coefficient element matrices on an interval of length h:
/// K = alpha (2/h) refK[0], M = alpha (h/2) refM[0], D = alpha refD[0].
SEMatrices se_matrices_constant(double alpha, double h, const ReferenceTensorSet& tensors,
                                int order);

/// Nonlinear element matrices by contraction over the Chebyshev index:
/// K = (2/h) sum_m c_m refK[m], M = (h/2) sum_m c_m refM[m], D = sum_m c_m refD[m].
SEMatrices se_matrices_contracted(const Eigen::VectorXd& cheb_coeffs, double h,
                                  const ReferenceTensorSet& tensors, int order);

/// Element load vector of a unit source: q[w] = int_I phi_w dz.
Eigen::VectorXd se_load_uniform(double h, int order);

}  // namespace q3d
