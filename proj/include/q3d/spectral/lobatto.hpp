#pragma once

#include <Eigen/Dense>

namespace q3d {

/// Legendre polynomial P_n(x) by the three-term recurrence.
double legendre(int n, double x);

/// Hierarchical Lobatto shape function phi_q on [-1, 1].
///
/// phi_0 = (1-xi)/2 and phi_1 = (1+xi)/2 are the boundary (hat) modes;
/// phi_q = (L_q - L_{q-2}) / sqrt(2(2q-1)) for q >= 2 are interior modes
/// vanishing at xi = +-1 (integrated-Legendre / Szabo-Babuska scaling).
double lobatto_shape(int q, double xi);

/// d/dxi of lobatto_shape. For q >= 2 this is sqrt((2q-1)/2) * L_{q-1}(xi).
double lobatto_shape_deriv(int q, double xi);

/// All shape values phi_0..phi_p at xi.
Eigen::VectorXd lobatto_all(int p, double xi);

/// All shape derivatives phi_0'..phi_p' at xi.
Eigen::VectorXd lobatto_all_deriv(int p, double xi);

}  // namespace q3d
