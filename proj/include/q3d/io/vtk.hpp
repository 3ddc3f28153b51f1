#pragma once

#include "q3d/model/wire_benchmark.hpp"

#include <array>
#include <filesystem>

namespace q3d {

/// Temperature and |B| sampled on a structured (x, y, z) grid over the wire
/// box, written as a legacy-ASCII VTK structured grid (9 significant digits).
void export_fields(const std::filesystem::path& path, const Q3DModel& model,
                   const SpectralLineMesh& zmesh, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& a, const std::array<int, 3>& dims);

}  // namespace q3d
