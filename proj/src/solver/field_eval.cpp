#include "q3d/solver/field_eval.hpp"

#include "q3d/fem/assemble.hpp"
#include "q3d/spectral/lobatto.hpp"

#include <stdexcept>

namespace q3d {

Eigen::Vector3d barycentric(const TriMesh2D& mesh, int t, const Eigen::Vector2d& p) {
    const auto& tri = mesh.triangle(t);
    const Eigen::Vector2d a = mesh.node(tri.v[0]);
    const Eigen::Vector2d b = mesh.node(tri.v[1]);
    const Eigen::Vector2d c = mesh.node(tri.v[2]);
    const double det = (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
    Eigen::Vector3d lambda;
    lambda[1] = ((p.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (p.y() - a.y())) / det;
    lambda[2] = ((b.x() - a.x()) * (p.y() - a.y()) - (p.x() - a.x()) * (b.y() - a.y())) / det;
    lambda[0] = 1.0 - lambda[1] - lambda[2];
    return lambda;
}

int locate_triangle(const TriMesh2D& mesh, const Eigen::Vector2d& p) {
    constexpr double tol = 1e-10;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const Eigen::Vector3d lambda = barycentric(mesh, t, p);
        if (lambda.minCoeff() >= -tol) return t;
    }
    return -1;
}

double eval_scalar(const TriMesh2D& mesh, const SpectralLineMesh& zmesh, const DofMap& map,
                   const Eigen::VectorXd& u, int tri, const Eigen::Vector3d& lambda, int k,
                   double xi) {
    const int p = zmesh.order(k);
    const Eigen::VectorXd phi = lobatto_all(p, xi);
    double value = 0.0;
    for (int q = 0; q <= p; ++q) {
        const int w = zmesh.global_index(k, q);
        double plane = 0.0;
        for (int j = 0; j < 3; ++j) plane += lambda[j] * u[map(w, mesh.triangle(tri).v[j])];
        value += phi[q] * plane;
    }
    return value;
}

double eval_scalar_at(const TriMesh2D& mesh, const SpectralLineMesh& zmesh, const DofMap& map,
                      const Eigen::VectorXd& u, const Eigen::Vector2d& p, double z) {
    const int tri = locate_triangle(mesh, p);
    if (tri < 0) throw std::invalid_argument("eval_scalar_at: point outside the mesh");
    const int k = zmesh.element_of(z);
    return eval_scalar(mesh, zmesh, map, u, tri, barycentric(mesh, tri, p), k,
                       zmesh.to_reference(k, z));
}

Eigen::VectorXd trace_coefficients(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                   const DofMap& map, const Eigen::VectorXd& u, int tri,
                                   const Eigen::Vector3d& lambda) {
    Eigen::VectorXd trace = Eigen::VectorXd::Zero(zmesh.num_functions());
    for (int w = 0; w < zmesh.num_functions(); ++w)
        for (int j = 0; j < 3; ++j) trace[w] += lambda[j] * u[map(w, mesh.triangle(tri).v[j])];
    return trace;
}

double eval_trace(const SpectralLineMesh& zmesh, const Eigen::VectorXd& trace, double z) {
    const int k = zmesh.element_of(z);
    const double xi = zmesh.to_reference(k, z);
    const int p = zmesh.order(k);
    const Eigen::VectorXd phi = lobatto_all(p, xi);
    double value = 0.0;
    for (int q = 0; q <= p; ++q) value += phi[q] * trace[zmesh.global_index(k, q)];
    return value;
}

Eigen::Vector3d eval_vector_potential(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                      const MagneticLayout& layout, const Eigen::VectorXd& a,
                                      int tri, const Eigen::Vector3d& lambda, int k, double xi) {
    const int p = zmesh.order(k);
    const Eigen::VectorXd phi = lobatto_all(p, xi);
    Eigen::Vector3d out = Eigen::Vector3d::Zero();
    for (int q = 0; q <= p; ++q) {
        const int w = zmesh.global_index(k, q);
        Eigen::Vector2d at = Eigen::Vector2d::Zero();
        for (int i = 0; i < 3; ++i)
            at += a[layout.t(w, mesh.triangle_edges(tri)[i])] * whitney_value(mesh, tri, i, lambda);
        double az = 0.0;
        for (int j = 0; j < 3; ++j) az += lambda[j] * a[layout.l(w, mesh.triangle(tri).v[j])];
        out.head<2>() += phi[q] * at;
        out[2] += phi[q] * az;
    }
    return out;
}

Eigen::Vector3d eval_curl(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                          const MagneticLayout& layout, const Eigen::VectorXd& a, int tri,
                          const Eigen::Vector3d& lambda, int k, double xi) {
    const int p = zmesh.order(k);
    const Eigen::VectorXd phi = lobatto_all(p, xi);
    const Eigen::VectorXd dphi = lobatto_all_deriv(p, xi) * (2.0 / zmesh.length(k));
    const auto& g = mesh.barycentric_gradients(tri);

    Eigen::Vector3d out = Eigen::Vector3d::Zero();
    for (int q = 0; q <= p; ++q) {
        const int w = zmesh.global_index(k, q);
        for (int i = 0; i < 3; ++i) {
            const double coef = a[layout.t(w, mesh.triangle_edges(tri)[i])];
            if (coef == 0.0) continue;
            const Eigen::Vector2d we = whitney_value(mesh, tri, i, lambda);
            // curl(w phi) = phi' (z x w) + phi curl2(w) z
            out[0] += coef * dphi[q] * (-we.y());
            out[1] += coef * dphi[q] * we.x();
            out[2] += coef * phi[q] * whitney_curl(mesh, tri, i);
        }
        for (int j = 0; j < 3; ++j) {
            const double coef = a[layout.l(w, mesh.triangle(tri).v[j])];
            if (coef == 0.0) continue;
            // curl(N phi z) = -phi (z x grad N)
            out[0] += coef * phi[q] * g(1, j);
            out[1] += coef * phi[q] * (-g(0, j));
        }
    }
    return out;
}

}  // namespace q3d
