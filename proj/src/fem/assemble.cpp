#include "q3d/fem/assemble.hpp"

#include <stdexcept>

namespace q3d {

namespace {

void check_alpha(const TriMesh2D& mesh, const Eigen::VectorXd& alpha, const char* who) {
    if (alpha.size() != mesh.num_triangles())
        throw std::invalid_argument(std::string(who) + ": coefficient size mismatch");
    if (!alpha.allFinite())
        throw std::invalid_argument(std::string(who) + ": non-finite coefficient");
}

// Barycentric coordinates of the three edge midpoints (exact for quadratics).
constexpr double kMid[3][3] = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};

}  // namespace

Eigen::Matrix3d element_nodal_stiffness(const TriMesh2D& mesh, int t) {
    const auto& g = mesh.barycentric_gradients(t);
    return mesh.area(t) * (g.transpose() * g);
}

Eigen::Matrix3d element_nodal_mass(const TriMesh2D& mesh, int t) {
    Eigen::Matrix3d m;
    m << 2, 1, 1, 1, 2, 1, 1, 1, 2;
    return (mesh.area(t) / 12.0) * m;
}

Eigen::Vector2d whitney_value(const TriMesh2D& mesh, int t, int side,
                              const Eigen::Vector3d& lambda) {
    const auto& g = mesh.barycentric_gradients(t);
    const int a = side, b = (side + 1) % 3;
    const double sign = mesh.triangle_edge_signs(t)[side];
    return sign * (lambda[a] * g.col(b) - lambda[b] * g.col(a));
}

double whitney_curl(const TriMesh2D& mesh, int t, int side) {
    const auto& g = mesh.barycentric_gradients(t);
    const int a = side, b = (side + 1) % 3;
    const double sign = mesh.triangle_edge_signs(t)[side];
    return sign * 2.0 * (g(0, a) * g(1, b) - g(1, a) * g(0, b));
}

Eigen::Matrix3d element_edge_stiffness(const TriMesh2D& mesh, int t) {
    Eigen::Vector3d curls;
    for (int i = 0; i < 3; ++i) curls[i] = whitney_curl(mesh, t, i);
    return mesh.area(t) * (curls * curls.transpose());
}

Eigen::Matrix3d element_edge_mass(const TriMesh2D& mesh, int t) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    const double w = mesh.area(t) / 3.0;
    for (int q = 0; q < 3; ++q) {
        const Eigen::Vector3d lambda(kMid[q][0], kMid[q][1], kMid[q][2]);
        Eigen::Matrix<double, 2, 3> vals;
        for (int i = 0; i < 3; ++i) vals.col(i) = whitney_value(mesh, t, i, lambda);
        m += w * (vals.transpose() * vals);
    }
    return m;
}

Eigen::Matrix3d element_coupling(const TriMesh2D& mesh, int t) {
    const auto& g = mesh.barycentric_gradients(t);
    Eigen::Matrix3d c;
    for (int i = 0; i < 3; ++i) {
        const int a = i, b = (i + 1) % 3;
        const double sign = mesh.triangle_edge_signs(t)[i];
        // Mean of w_e over the triangle is (grad lambda_b - grad lambda_a)/3.
        const Eigen::Vector2d mean = sign * (g.col(b) - g.col(a)) / 3.0;
        for (int j = 0; j < 3; ++j) c(i, j) = mesh.area(t) * mean.dot(g.col(j));
    }
    return c;
}

namespace {

template <class LocalMatrix, class RowIndex, class ColIndex>
SpMat assemble(const TriMesh2D& mesh, const Eigen::VectorXd& alpha, int rows, int cols,
               LocalMatrix&& local, RowIndex&& row_of, ColIndex&& col_of) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(mesh.num_triangles()) * 9);
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        if (alpha[t] == 0.0) continue;
        const Eigen::Matrix3d m = alpha[t] * local(t);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                trips.emplace_back(row_of(t, i), col_of(t, j), m(i, j));
    }
    SpMat out(rows, cols);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

}  // namespace

SpMat assemble_nodal_stiffness(const TriMesh2D& mesh, const Eigen::VectorXd& alpha) {
    check_alpha(mesh, alpha, "assemble_nodal_stiffness");
    const auto node = [&](int t, int i) { return mesh.triangle(t).v[i]; };
    return assemble(
        mesh, alpha, mesh.num_nodes(), mesh.num_nodes(),
        [&](int t) { return element_nodal_stiffness(mesh, t); }, node, node);
}

SpMat assemble_nodal_mass(const TriMesh2D& mesh, const Eigen::VectorXd& alpha) {
    check_alpha(mesh, alpha, "assemble_nodal_mass");
    const auto node = [&](int t, int i) { return mesh.triangle(t).v[i]; };
    return assemble(
        mesh, alpha, mesh.num_nodes(), mesh.num_nodes(),
        [&](int t) { return element_nodal_mass(mesh, t); }, node, node);
}

EdgeMatrices assemble_edge_matrices(const TriMesh2D& mesh, const Eigen::VectorXd& alpha) {
    check_alpha(mesh, alpha, "assemble_edge_matrices");
    const auto edge = [&](int t, int i) { return mesh.triangle_edges(t)[i]; };
    EdgeMatrices out;
    out.K = assemble(
        mesh, alpha, mesh.num_edges(), mesh.num_edges(),
        [&](int t) { return element_edge_stiffness(mesh, t); }, edge, edge);
    out.M = assemble(
        mesh, alpha, mesh.num_edges(), mesh.num_edges(),
        [&](int t) { return element_edge_mass(mesh, t); }, edge, edge);
    return out;
}

SpMat assemble_coupling(const TriMesh2D& mesh, const Eigen::VectorXd& alpha) {
    check_alpha(mesh, alpha, "assemble_coupling");
    return assemble(
        mesh, alpha, mesh.num_edges(), mesh.num_nodes(),
        [&](int t) { return element_coupling(mesh, t); },
        [&](int t, int i) { return mesh.triangle_edges(t)[i]; },
        [&](int t, int j) { return mesh.triangle(t).v[j]; });
}

double region_area(const TriMesh2D& mesh, const std::vector<int>& region_ids) {
    double area = 0.0;
    for (int t : mesh.triangles_in_regions(region_ids)) area += mesh.area(t);
    return area;
}

Eigen::VectorXd assemble_winding_vector(const TriMesh2D& mesh,
                                        const std::vector<int>& conductor_regions) {
    const auto tris = mesh.triangles_in_regions(conductor_regions);
    if (tris.empty())
        throw std::invalid_argument("assemble_winding_vector: empty conductor region");
    double total = 0.0;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(mesh.num_nodes());
    for (int t : tris) {
        total += mesh.area(t);
        for (int i = 0; i < 3; ++i) x[mesh.triangle(t).v[i]] += mesh.area(t) / 3.0;
    }
    return x / total;
}

Eigen::VectorXd fe_loss_vector(const TriMesh2D& mesh,
                               const std::vector<std::array<double, 3>>& density_samples) {
    if (static_cast<int>(density_samples.size()) != mesh.num_triangles())
        throw std::invalid_argument("fe_loss_vector: sample count mismatch");
    Eigen::VectorXd load = Eigen::VectorXd::Zero(mesh.num_nodes());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const double w = mesh.area(t) / 3.0;
        for (int q = 0; q < 3; ++q) {
            const double density = density_samples[t][q];
            if (density < 0.0)
                throw std::invalid_argument("fe_loss_vector: negative loss density");
            for (int j = 0; j < 3; ++j)
                load[mesh.triangle(t).v[j]] += w * density * kMid[q][j];
        }
    }
    return load;
}

}  // namespace q3d
