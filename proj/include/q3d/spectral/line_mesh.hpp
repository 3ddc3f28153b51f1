#pragma once

#include <vector>

namespace q3d {

/// 1D spectral-element mesh along z: K subintervals with per-element
/// polynomial order.
///
/// Global longitudinal function numbering: the K+1 breakpoint (vertex) modes
/// come first, followed by the interior modes of each element in order. Local
/// mode q=0 of element k is the vertex mode at breakpoint k, q=1 the one at
/// breakpoint k+1, and q>=2 are the element's interior modes.
struct SpectralLineMesh {
    std::vector<double> breakpoints;
    std::vector<int> orders;

    static SpectralLineMesh uniform(double z0, double z1, int num_elements, int order);

    void validate() const;

    int num_elements() const { return static_cast<int>(orders.size()); }
    double z_min() const { return breakpoints.front(); }
    double z_max() const { return breakpoints.back(); }
    double length(int k) const { return breakpoints[k + 1] - breakpoints[k]; }
    int order(int k) const { return orders[k]; }
    int max_order() const;

    /// Total number of global longitudinal basis functions (sum of orders + 1).
    int num_functions() const;

    /// Global function index of local mode q on element k.
    int global_index(int k, int q) const;

    /// Global index of the vertex mode at breakpoint v.
    int vertex_index(int v) const { return v; }

    /// Affine maps between element k and the reference interval [-1, 1].
    double to_reference(int k, double z) const {
        return 2.0 * (z - breakpoints[k]) / length(k) - 1.0;
    }
    double from_reference(int k, double xi) const {
        return breakpoints[k] + 0.5 * (xi + 1.0) * length(k);
    }

    /// Element containing z (clamped to the mesh range).
    int element_of(double z) const;
};

}  // namespace q3d
