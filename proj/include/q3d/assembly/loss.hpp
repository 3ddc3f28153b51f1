#pragma once

#include "q3d/assembly/dof_map.hpp"

#include <functional>

namespace q3d {

enum class LossPath {
    JointQuadrature,  // density integrated jointly over (triangle x z-element)
    Separable,        // cross-section profile collapsed to the element centroid
};

/// Effective material data at a loss evaluation point.
struct LossMaterials {
    double sigma = 0.0;  // S/m
    double tau = 0.0;    // s
    double rho = 0.0;    // Ohm m
    double nu = 0.0;     // m/H
};

struct LossInputs {
    const TriMesh2D* mag_mesh = nullptr;
    const TriMesh2D* th_mesh = nullptr;
    /// Thermal triangle -> magnetic triangle (same geometry).
    const std::vector<int>* th_tri_to_mag = nullptr;
    const SpectralLineMesh* zmesh = nullptr;
    const Eigen::VectorXd* a_new = nullptr;
    const Eigen::VectorXd* a_old = nullptr;
    double dt = 0.0;
    /// Working-point materials at (thermal triangle, z).
    std::function<LossMaterials(int, double)> materials;
    /// |J_s|^2 over the conductor; zero elsewhere.
    double j_source_sq = 0.0;
    const std::vector<char>* th_tri_conductor = nullptr;
};

/// Heat-loss load vector on the thermal space: rho |J_s|^2 + sigma |dA/dt|^2
/// + nu tau |curl dA/dt|^2 tested against the nodal x spectral functions.
Eigen::VectorXd compute_loss_vector(const LossInputs& in, LossPath path);

/// Projection of a general density onto the nodal x spectral test space,
/// entries int q N_j phi_w dV (joint quadrature).
Eigen::VectorXd project_density(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                const std::function<double(int, const Eigen::Vector2d&, double)>&
                                    density,
                                int z_quad_points = 0);

}  // namespace q3d
