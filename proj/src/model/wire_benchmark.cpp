#include "q3d/model/wire_benchmark.hpp"

#include "q3d/fem/assemble.hpp"
#include "q3d/fem/structured.hpp"
#include "q3d/spectral/chebyshev.hpp"
#include "q3d/spectral/lobatto.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>

namespace q3d {

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

Eigen::VectorXd interpolate_profile(const SpectralLineMesh& zmesh, int n_2d,
                                    const std::function<double(double)>& profile) {
    Eigen::VectorXd trace = Eigen::VectorXd::Zero(zmesh.num_functions());
    for (int k = 0; k < zmesh.num_elements(); ++k) {
        const int p = zmesh.order(k);
        const Eigen::VectorXd xi = chebyshev_points(p);
        Eigen::MatrixXd vander(p + 1, p + 1);
        Eigen::VectorXd rhs(p + 1);
        for (int i = 0; i <= p; ++i) {
            vander.row(i) = lobatto_all(p, xi[i]).transpose();
            rhs[i] = profile(zmesh.from_reference(k, xi[i]));
        }
        const Eigen::VectorXd local = vander.partialPivLu().solve(rhs);
        for (int q = 0; q <= p; ++q) trace[zmesh.global_index(k, q)] = local[q];
    }

    Eigen::VectorXd full(static_cast<long>(zmesh.num_functions()) * n_2d);
    for (int w = 0; w < zmesh.num_functions(); ++w)
        for (int j = 0; j < n_2d; ++j) full[static_cast<long>(w) * n_2d + j] = trace[w];
    return full;
}

Constraints Q3DModel::magnetic_constraints() const {
    const MagneticLayout layout = magnetic_layout(*mag_mesh, zmesh);
    Constraints c(layout.size());
    for (int w = 0; w < zmesh.num_functions(); ++w) {
        for (int e : mag_dirichlet_edges) c.constrain(layout.t(w, e), 0.0);
        for (int j : mag_dirichlet_nodes) c.constrain(layout.l(w, j), 0.0);
    }
    return c;
}

Constraints Q3DModel::thermal_constraints(const SpectralLineMesh& z) const {
    const DofMap map = thermal_layout(*th_mesh, z);
    Constraints c(map.block_size());
    // Isothermal wire fronts: clamp the vertex modes at both ends.
    for (int j = 0; j < th_mesh->num_nodes(); ++j) {
        c.constrain(map(z.vertex_index(0), j), bath_temperature);
        c.constrain(map(z.vertex_index(z.num_elements()), j), bath_temperature);
    }
    return c;
}

Eigen::VectorXd Q3DModel::initial_thermal_field(const SpectralLineMesh& z) const {
    return interpolate_profile(z, th_mesh->num_nodes(), initial_temperature);
}

Q3DModel build_wire_benchmark(const WireModelParams& params) {
    if (!(params.wire_lx > 0) || !(params.wire_ly > 0) || !(params.length > 0))
        throw std::invalid_argument("build_wire_benchmark: lengths must be positive");
    if (params.air_scale <= 1.0)
        throw std::invalid_argument("build_wire_benchmark: air box smaller than the wire");
    if (params.wire_nx < 1 || params.wire_ny < 1 || params.air_nx < 1 || params.air_ny < 1)
        throw std::invalid_argument("build_wire_benchmark: mesh divisions must be >= 1");
    params.quench.validate();

    Q3DModel model;

    // Magnetic mesh: wire cells continued by geometrically graded air cells.
    std::vector<double> xb = uniform_breaks(0.0, params.wire_lx, params.wire_nx);
    {
        const auto air = graded_breaks(params.wire_lx, params.air_scale * params.wire_lx,
                                       params.air_nx, params.wire_lx / params.wire_nx);
        xb.insert(xb.end(), air.begin() + 1, air.end());
    }
    std::vector<double> yb = uniform_breaks(0.0, params.wire_ly, params.wire_ny);
    {
        const auto air = graded_breaks(params.wire_ly, params.air_scale * params.wire_ly,
                                       params.air_ny, params.wire_ly / params.wire_ny);
        yb.insert(yb.end(), air.begin() + 1, air.end());
    }

    std::map<int, RegionInfo> mag_regions{{kRegionWire, {"wire", true}},
                                          {kRegionAir, {"air", false}}};
    model.mag_mesh = std::make_shared<TriMesh2D>(build_structured_mesh(
        xb, yb,
        [&](double x, double y) {
            return (x < params.wire_lx && y < params.wire_ly) ? kRegionWire : kRegionAir;
        },
        mag_regions));

    // Thermal mesh: the wire region only.
    const auto wire_xb = uniform_breaks(0.0, params.wire_lx, params.wire_nx);
    const auto wire_yb = uniform_breaks(0.0, params.wire_ly, params.wire_ny);
    model.th_mesh = std::make_shared<TriMesh2D>(build_structured_mesh(
        wire_xb, wire_yb, [&](double, double) { return kRegionWire; },
        std::map<int, RegionInfo>{{kRegionWire, {"wire", true}}}));

    // Structured index maps between the two meshes.
    const int nx_tot = static_cast<int>(xb.size()) - 1;
    model.th_node_to_mag.resize(model.th_mesh->num_nodes());
    for (int j = 0; j <= params.wire_ny; ++j)
        for (int i = 0; i <= params.wire_nx; ++i)
            model.th_node_to_mag[j * (params.wire_nx + 1) + i] = j * (nx_tot + 1) + i;
    model.th_tri_to_mag.resize(model.th_mesh->num_triangles());
    for (int j = 0; j < params.wire_ny; ++j) {
        for (int i = 0; i < params.wire_nx; ++i) {
            for (int half = 0; half < 2; ++half) {
                model.th_tri_to_mag[2 * (j * params.wire_nx + i) + half] =
                    2 * (j * nx_tot + i) + half;
            }
        }
    }
    model.th_tri_conductor.assign(model.th_mesh->num_triangles(), 1);

    model.zmesh =
        SpectralLineMesh::uniform(0.0, params.length, params.se_elements, params.se_order);

    // Materials.
    RegionMaterial wire =
        default_wire_material(params.rrr, params.copper_fraction, params.quench);
    if (params.materials_file)
        apply_material_overrides(wire, load_material_file(*params.materials_file));
    model.materials.by_region[kRegionWire] = std::move(wire);
    model.materials.by_region[kRegionAir] = default_air_material();
    model.materials.validate_against(*model.mag_mesh);

    // Magnetic boundary conditions: tangential-A = 0 on the outer air-box
    // boundary and on the x = 0 symmetry cut; natural on the y = 0 cut and at
    // the z ends.
    const double xmax = xb.back(), ymax = yb.back();
    const double tol = 1e-9 * std::max(xmax, ymax);
    const auto on_dirichlet_line = [&](const Eigen::Vector2d& p) {
        return near(p.x(), 0.0, tol) || near(p.x(), xmax, tol) || near(p.y(), ymax, tol);
    };
    const auto& mag = *model.mag_mesh;
    for (int e : mag.boundary_edges()) {
        const Eigen::Vector2d a = mag.node(mag.edge(e)[0]);
        const Eigen::Vector2d b = mag.node(mag.edge(e)[1]);
        const bool on_x0 = near(a.x(), 0.0, tol) && near(b.x(), 0.0, tol);
        const bool on_xmax = near(a.x(), xmax, tol) && near(b.x(), xmax, tol);
        const bool on_ymax = near(a.y(), ymax, tol) && near(b.y(), ymax, tol);
        if (on_x0 || on_xmax || on_ymax) model.mag_dirichlet_edges.push_back(e);
    }
    for (int j = 0; j < mag.num_nodes(); ++j)
        if (mag.is_boundary_node(j) && on_dirichlet_line(mag.node(j)))
            model.mag_dirichlet_nodes.push_back(j);

    model.bath_temperature = params.bath_temperature;
    model.conductor_area = region_area(mag, {kRegionWire});
    model.source_current = params.engineering_current_density * model.conductor_area;

    const double width = params.bump_width_fraction * params.length;
    const double center = 0.5 * params.length;
    const double bath = params.bath_temperature, peak = params.peak_temperature;
    model.initial_temperature = [bath, peak, center, width](double z) {
        const double arg = (z - center) / width;
        return bath + (peak - bath) * std::exp(-arg * arg);
    };

    return model;
}

}  // namespace q3d
