#pragma once

#include "q3d/fem/tri_mesh.hpp"
#include "q3d/spectral/line_mesh.hpp"

namespace q3d {

/// Kronecker-compatible block layout: global index = offset + w * n_2d + j,
/// with w the longitudinal function index and j the 2D entity index.
struct DofMap {
    int n_z = 0;
    int n_2d = 0;
    int offset = 0;

    int operator()(int w, int j) const { return offset + w * n_2d + j; }
    int block_size() const { return n_z * n_2d; }
};

/// Magnetic vector layout [a_t; a_l]: transversal edge block first, then the
/// longitudinal node block.
struct MagneticLayout {
    DofMap t;  // (z function, edge)
    DofMap l;  // (z function, node)

    int size() const { return t.block_size() + l.block_size(); }
};

inline MagneticLayout magnetic_layout(const TriMesh2D& mesh, const SpectralLineMesh& zmesh) {
    MagneticLayout layout;
    layout.t = {zmesh.num_functions(), mesh.num_edges(), 0};
    layout.l = {zmesh.num_functions(), mesh.num_nodes(), layout.t.block_size()};
    return layout;
}

inline DofMap thermal_layout(const TriMesh2D& mesh, const SpectralLineMesh& zmesh) {
    return {zmesh.num_functions(), mesh.num_nodes(), 0};
}

}  // namespace q3d
