#pragma once

#include "q3d/assembly/dirichlet.hpp"
#include "q3d/assembly/dof_map.hpp"
#include "q3d/materials/material_set.hpp"

#include <memory>

namespace q3d {

/// Geometry and discretization of the quarter-wire benchmark model.
struct WireModelParams {
    double wire_lx = 1e-4;     // quarter-wire width (m)
    double wire_ly = 1e-4;     // quarter-wire height (m)
    double length = 1.0;       // wire length (m)
    double air_scale = 10.0;   // air box extent relative to the wire
    int wire_nx = 1;           // cross-section divisions in the wire
    int wire_ny = 12;
    int air_nx = 6;            // graded air divisions per direction
    int air_ny = 6;
    int se_elements = 5;       // longitudinal spectral elements
    int se_order = 6;

    double rrr = 100.0;
    double copper_fraction = 0.6;
    QuenchParams quench;

    double engineering_current_density = 500.0e6;  // A/m^2 over the quarter wire

    double bath_temperature = 1.9;  // K
    double peak_temperature = 11.2;  // K, initial bump amplitude
    double bump_width_fraction = 0.05;  // of the wire length

    std::optional<std::filesystem::path> materials_file;
};

enum Region : int { kRegionWire = 1, kRegionAir = 2 };

/// Assembled model: magnetic mesh (wire + air), thermal mesh (wire only),
/// index maps between them, z-mesh, materials, boundary conditions, and the
/// source current.
struct Q3DModel {
    std::shared_ptr<const TriMesh2D> mag_mesh;
    std::shared_ptr<const TriMesh2D> th_mesh;
    std::vector<int> th_node_to_mag;
    std::vector<int> th_tri_to_mag;
    std::vector<char> th_tri_conductor;

    SpectralLineMesh zmesh;
    MaterialSet materials;

    // Flux-parallel outer boundary plus the tangential-A = 0 symmetry cut;
    // entities listed here are constrained to zero for every z function.
    std::vector<int> mag_dirichlet_edges;
    std::vector<int> mag_dirichlet_nodes;

    double bath_temperature = 1.9;
    double source_current = 0.0;    // i_s (A), z-directed
    double conductor_area = 0.0;    // S (m^2)

    /// Initial temperature profile along z (uniform over the cross-section).
    std::function<double(double)> initial_temperature;

    Constraints magnetic_constraints() const;
    Constraints thermal_constraints(const SpectralLineMesh& z) const;

    /// Coefficient vector of the initial temperature on the thermal layout.
    Eigen::VectorXd initial_thermal_field(const SpectralLineMesh& z) const;
};

Q3DModel build_wire_benchmark(const WireModelParams& params);

/// Interpolate a z-profile into the spectral space (exact on polynomials of
/// element order), uniform over the cross-section entities.
Eigen::VectorXd interpolate_profile(const SpectralLineMesh& zmesh, int n_2d,
                                    const std::function<double(double)>& profile);

}  // namespace q3d
