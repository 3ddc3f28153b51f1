#pragma once

#include "q3d/fem/tri_mesh.hpp"

#include <functional>
#include <vector>

namespace q3d {

/// Tensor-product triangulation: every cell of the x/y breakpoint grid is
/// split into two triangles. The region of each cell is decided from its
/// center.
TriMesh2D build_structured_mesh(const std::vector<double>& x_breaks,
                                const std::vector<double>& y_breaks,
                                const std::function<int(double, double)>& region_of_center,
                                std::map<int, RegionInfo> regions);

/// n uniform subdivisions of [a, b] appended after `from` (which supplies a).
std::vector<double> uniform_breaks(double a, double b, int n);

/// Geometrically graded subdivisions of [a, b], first step matching `h0`.
std::vector<double> graded_breaks(double a, double b, int n, double h0);

}  // namespace q3d
