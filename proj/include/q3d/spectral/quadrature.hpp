#pragma once

#include <Eigen/Dense>

namespace q3d {

/// Quadrature rule on the reference interval [-1, 1].
struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;

    int size() const { return static_cast<int>(nodes.size()); }

    /// Integrate a callable f(x) over [-1, 1].
    template <class F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (int i = 0; i < size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

/// n-point Gauss-Legendre rule; exact for polynomials up to degree 2n-1.
QuadratureRule gauss_legendre(int n);

}  // namespace q3d
