#pragma once

#include "q3d/assembly/dof_map.hpp"

#include <Eigen/Dense>

namespace q3d {

/// Triangle containing point p (barycentric test with tolerance), or -1.
int locate_triangle(const TriMesh2D& mesh, const Eigen::Vector2d& p);

/// Barycentric coordinates of p in triangle t.
Eigen::Vector3d barycentric(const TriMesh2D& mesh, int t, const Eigen::Vector2d& p);

/// Nodal x spectral scalar field value at (triangle, barycentric, element, xi).
double eval_scalar(const TriMesh2D& mesh, const SpectralLineMesh& zmesh, const DofMap& map,
                   const Eigen::VectorXd& u, int tri, const Eigen::Vector3d& lambda, int k,
                   double xi);

/// Scalar field value at a physical point (triangle located by scan).
double eval_scalar_at(const TriMesh2D& mesh, const SpectralLineMesh& zmesh, const DofMap& map,
                      const Eigen::VectorXd& u, const Eigen::Vector2d& p, double z);

/// Longitudinal trace coefficients of a scalar field at a fixed cross-section
/// position: theta(z) = sum_w c[w] phi_w(z).
Eigen::VectorXd trace_coefficients(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                   const DofMap& map, const Eigen::VectorXd& u, int tri,
                                   const Eigen::Vector3d& lambda);

/// Evaluate a longitudinal trace at z.
double eval_trace(const SpectralLineMesh& zmesh, const Eigen::VectorXd& trace, double z);

/// Magnetic vector potential A = (A_t, A_z) at a point of the magnetic mesh.
Eigen::Vector3d eval_vector_potential(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                      const MagneticLayout& layout, const Eigen::VectorXd& a,
                                      int tri, const Eigen::Vector3d& lambda, int k, double xi);

/// curl A at a point of the magnetic mesh.
Eigen::Vector3d eval_curl(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                          const MagneticLayout& layout, const Eigen::VectorXd& a, int tri,
                          const Eigen::Vector3d& lambda, int k, double xi);

}  // namespace q3d
