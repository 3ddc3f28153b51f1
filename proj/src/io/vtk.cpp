#include "q3d/io/vtk.hpp"

#include "q3d/solver/field_eval.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace q3d {

namespace {

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

void export_fields(const std::filesystem::path& path, const Q3DModel& model,
                   const SpectralLineMesh& zmesh, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& a, const std::array<int, 3>& dims) {
    const auto& th = *model.th_mesh;
    const auto& mag = *model.mag_mesh;
    const DofMap th_map = thermal_layout(th, zmesh);
    const MagneticLayout layout = magnetic_layout(mag, zmesh);

    // Wire bounding box.
    Eigen::Vector2d lo = th.node(0), hi = th.node(0);
    for (int j = 0; j < th.num_nodes(); ++j) {
        lo = lo.cwiseMin(th.node(j));
        hi = hi.cwiseMax(th.node(j));
    }

    const int nx = dims[0], ny = dims[1], nz = dims[2];
    const auto coord = [](double a0, double a1, int i, int n) {
        return a0 + (a1 - a0) * i / (n - 1);
    };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open VTK output: " + path.string());
    out << "# vtk DataFile Version 3.0\n";
    out << "q3dquench fields\n";
    out << "ASCII\n";
    out << "DATASET STRUCTURED_GRID\n";
    out << "DIMENSIONS " << nx << " " << ny << " " << nz << "\n";
    out << "POINTS " << nx * ny * nz << " double\n";

    std::vector<double> temperature, b_mag;
    temperature.reserve(static_cast<std::size_t>(nx) * ny * nz);
    b_mag.reserve(temperature.capacity());

    for (int iz = 0; iz < nz; ++iz) {
        const double z = coord(zmesh.z_min(), zmesh.z_max(), iz, nz);
        const int k = zmesh.element_of(z);
        const double xi = zmesh.to_reference(k, z);
        for (int iy = 0; iy < ny; ++iy) {
            const double y = coord(lo.y(), hi.y(), iy, ny);
            for (int ix = 0; ix < nx; ++ix) {
                const double x = coord(lo.x(), hi.x(), ix, nx);
                out << fmt9(x) << " " << fmt9(y) << " " << fmt9(z) << "\n";

                const Eigen::Vector2d p(x, y);
                const int tt = locate_triangle(th, p);
                if (tt < 0) throw std::runtime_error("export_fields: sample outside the wire");
                temperature.push_back(
                    eval_scalar(th, zmesh, th_map, u, tt, barycentric(th, tt, p), k, xi));

                const int tm = model.th_tri_to_mag[tt];
                b_mag.push_back(
                    eval_curl(mag, zmesh, layout, a, tm, barycentric(mag, tm, p), k, xi).norm());
            }
        }
    }

    out << "POINT_DATA " << nx * ny * nz << "\n";
    out << "SCALARS temperature_K double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (double v : temperature) out << fmt9(v) << "\n";
    out << "SCALARS B_magnitude_T double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (double v : b_mag) out << fmt9(v) << "\n";
    if (!out) throw std::runtime_error("VTK write failed: " + path.string());
}

}  // namespace q3d
