#pragma once

#include "q3d/spectral/line_mesh.hpp"

#include <Eigen/Dense>

namespace q3d {

/// Smoothness indicator of a longitudinal trace on element k: the magnitude
/// of the top two coefficients of the trace's local Chebyshev expansion,
/// relative to the peak coefficient. Smooth well-resolved traces decay to
/// numerical zero; a steep front keeps the tail large.
double trace_decay_indicator(const SpectralLineMesh& zmesh, int k,
                             const Eigen::VectorXd& trace);

struct AdaptOutcome {
    SpectralLineMesh mesh;
    bool changed = false;
    bool hit_min_length = false;
};

/// Bisect every element whose indicator exceeds the threshold; elements at
/// the minimum length are left alone (reported via hit_min_length).
AdaptOutcome adapt_z_mesh(const SpectralLineMesh& zmesh, const std::vector<double>& indicators,
                          double threshold, double min_length);

/// Interpolate a Kronecker-layout field onto a new z-mesh (exact whenever the
/// old field is polynomial of element order on each new element).
Eigen::VectorXd transfer_field(const SpectralLineMesh& old_mesh,
                               const SpectralLineMesh& new_mesh, int n_2d,
                               const Eigen::VectorXd& u);

}  // namespace q3d
