#include "q3d/spectral/lobatto.hpp"

#include <cmath>
#include <stdexcept>

namespace q3d {

namespace {

void check_point(double xi) {
    if (!(std::abs(xi) <= 1.0 + 1e-12))
        throw std::domain_error("lobatto_shape: xi outside [-1, 1]");
}

}  // namespace

double legendre(int n, double x) {
    if (n < 0) throw std::domain_error("legendre: negative order");
    if (n == 0) return 1.0;
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double lobatto_shape(int q, double xi) {
    if (q < 0) throw std::domain_error("lobatto_shape: negative order");
    check_point(xi);
    if (q == 0) return 0.5 * (1.0 - xi);
    if (q == 1) return 0.5 * (1.0 + xi);
    return (legendre(q, xi) - legendre(q - 2, xi)) / std::sqrt(2.0 * (2 * q - 1));
}

double lobatto_shape_deriv(int q, double xi) {
    if (q < 0) throw std::domain_error("lobatto_shape_deriv: negative order");
    check_point(xi);
    if (q == 0) return -0.5;
    if (q == 1) return 0.5;
    return std::sqrt(0.5 * (2 * q - 1)) * legendre(q - 1, xi);
}

Eigen::VectorXd lobatto_all(int p, double xi) {
    if (p < 0) throw std::domain_error("lobatto_all: negative order");
    check_point(xi);
    Eigen::VectorXd v(p + 1);
    v[0] = 0.5 * (1.0 - xi);
    if (p >= 1) v[1] = 0.5 * (1.0 + xi);
    if (p >= 2) {
        // One pass of the Legendre recurrence serves all interior modes.
        double l0 = 1.0, l1 = xi;
        for (int k = 2; k <= p; ++k) {
            const double l2 = ((2 * k - 1) * xi * l1 - (k - 1) * l0) / k;
            v[k] = (l2 - l0) / std::sqrt(2.0 * (2 * k - 1));
            l0 = l1;
            l1 = l2;
        }
    }
    return v;
}

Eigen::VectorXd lobatto_all_deriv(int p, double xi) {
    if (p < 0) throw std::domain_error("lobatto_all_deriv: negative order");
    check_point(xi);
    Eigen::VectorXd v(p + 1);
    v[0] = -0.5;
    if (p >= 1) v[1] = 0.5;
    if (p >= 2) {
        double l0 = 1.0, l1 = xi;
        for (int k = 2; k <= p; ++k) {
            v[k] = std::sqrt(0.5 * (2 * k - 1)) * l1;
            const double l2 = ((2 * k - 1) * xi * l1 - (k - 1) * l0) / k;
            l0 = l1;
            l1 = l2;
        }
    }
    return v;
}

}  // namespace q3d
