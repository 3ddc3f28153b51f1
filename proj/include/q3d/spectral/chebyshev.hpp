#pragma once

#include <Eigen/Dense>

namespace q3d {

/// Chebyshev polynomial T_m(x) of the first kind, |x| <= 1.
double chebyshev(int m, double x);

/// Chebyshev-Gauss-Lobatto points x_j = cos(pi j / M), j = 0..M (descending).
/// M = 0 yields the single point 1.
Eigen::VectorXd chebyshev_points(int M);

/// Interpolation coefficients a_0..a_M from samples taken at
/// chebyshev_points(M), via a type-I discrete cosine transform:
/// sum_m a_m T_m matches the samples at the sample points.
Eigen::VectorXd chebyshev_coeffs(const Eigen::VectorXd& samples);

/// O(M^2) direct-summation transform; identical results serve as the
/// oracle for the fast path.
Eigen::VectorXd chebyshev_coeffs_direct(const Eigen::VectorXd& samples);

/// Clenshaw evaluation of sum_m coeffs[m] T_m(x).
double chebyshev_eval(const Eigen::VectorXd& coeffs, double x);

}  // namespace q3d
