#pragma once

#include "q3d/fem/tri_mesh.hpp"

#include <Eigen/Sparse>

namespace q3d {

using SpMat = Eigen::SparseMatrix<double>;

/// Element matrices with unit coefficient; local node order follows the
/// triangle's vertices, local edge order its sides.
Eigen::Matrix3d element_nodal_stiffness(const TriMesh2D& mesh, int t);
Eigen::Matrix3d element_nodal_mass(const TriMesh2D& mesh, int t);
Eigen::Matrix3d element_edge_stiffness(const TriMesh2D& mesh, int t);
Eigen::Matrix3d element_edge_mass(const TriMesh2D& mesh, int t);
/// Rows: local edges; columns: local nodes.
Eigen::Matrix3d element_coupling(const TriMesh2D& mesh, int t);

/// Whitney function of local side i at barycentric coordinates lambda,
/// including the global orientation sign.
Eigen::Vector2d whitney_value(const TriMesh2D& mesh, int t, int side,
                              const Eigen::Vector3d& lambda);
double whitney_curl(const TriMesh2D& mesh, int t, int side);

/// Node x node matrices, entries int alpha grad N_i . grad N_j dA and
/// int alpha N_i N_j dA; alpha is per element.
SpMat assemble_nodal_stiffness(const TriMesh2D& mesh, const Eigen::VectorXd& alpha);
SpMat assemble_nodal_mass(const TriMesh2D& mesh, const Eigen::VectorXd& alpha);

struct EdgeMatrices {
    SpMat K;  // int alpha curl w_e curl w_f dA
    SpMat M;  // int alpha w_e . w_f dA
};
EdgeMatrices assemble_edge_matrices(const TriMesh2D& mesh, const Eigen::VectorXd& alpha);

/// Edge x node matrix, entries int alpha w_e . grad N_j dA.
SpMat assemble_coupling(const TriMesh2D& mesh, const Eigen::VectorXd& alpha);

/// Winding vector of a stranded conductor: X[j] = int_cond N_j dA / S,
/// entries summing to one.
Eigen::VectorXd assemble_winding_vector(const TriMesh2D& mesh,
                                        const std::vector<int>& conductor_regions);

/// Load vector int q N_j dA from non-negative loss-density samples at the
/// three edge-midpoint quadrature points of each element.
Eigen::VectorXd fe_loss_vector(const TriMesh2D& mesh,
                               const std::vector<std::array<double, 3>>& density_samples);

/// Total conductor cross-section area.
double region_area(const TriMesh2D& mesh, const std::vector<int>& region_ids);

}  // namespace q3d
