#include "q3d/assembly/q3d_systems.hpp"

#include "q3d/spectral/chebyshev.hpp"

#include <stdexcept>

namespace q3d {

CoefficientField CoefficientField::constant(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                            const Eigen::VectorXd& per_triangle) {
    if (per_triangle.size() != mesh.num_triangles())
        throw std::invalid_argument("CoefficientField::constant: size mismatch");
    CoefficientField f;
    f.n_tri_ = mesh.num_triangles();
    f.n_k_ = zmesh.num_elements();
    f.coeffs_.resize(static_cast<std::size_t>(f.n_tri_) * f.n_k_);
    f.zero_.resize(f.n_tri_);
    for (int t = 0; t < f.n_tri_; ++t) {
        f.zero_[t] = per_triangle[t] == 0.0;
        Eigen::VectorXd c(1);
        c[0] = per_triangle[t];
        for (int k = 0; k < f.n_k_; ++k) f.coeffs_[f.index(t, k)] = c;
    }
    return f;
}

CoefficientField CoefficientField::sampled(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                           int cheb_order,
                                           const std::function<double(int, double)>& alpha,
                                           const std::vector<int>& support) {
    if (cheb_order < 0) throw std::invalid_argument("CoefficientField::sampled: negative order");
    CoefficientField f;
    f.n_tri_ = mesh.num_triangles();
    f.n_k_ = zmesh.num_elements();
    f.coeffs_.resize(static_cast<std::size_t>(f.n_tri_) * f.n_k_);
    f.zero_.assign(f.n_tri_, support.empty() ? 0 : 1);
    for (int t : support) f.zero_[t] = 0;

    const Eigen::VectorXd xi = chebyshev_points(cheb_order);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
    Eigen::VectorXd samples(cheb_order + 1);
    for (int t = 0; t < f.n_tri_; ++t) {
        for (int k = 0; k < f.n_k_; ++k) {
            if (f.zero_[t]) {
                f.coeffs_[f.index(t, k)] = zero;
                continue;
            }
            for (int j = 0; j <= cheb_order; ++j)
                samples[j] = alpha(t, zmesh.from_reference(k, xi[j]));
            f.coeffs_[f.index(t, k)] = chebyshev_coeffs(samples);
        }
    }
    return f;
}

namespace {

void check_field(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                 const ReferenceTensorSet& tensors, const CoefficientField& alpha) {
    if (alpha.num_triangles() != mesh.num_triangles() ||
        alpha.num_elements() != zmesh.num_elements())
        throw std::invalid_argument("q3d assembly: coefficient field does not match the meshes");
    if (zmesh.max_order() > tensors.max_basis_order())
        throw std::invalid_argument(
            "q3d assembly: element order exceeds tensor cache P_max; rebuild the cache with a "
            "larger --pmax");
}

using Trips = std::vector<Eigen::Triplet<double>>;

/// Scatter kron(SE, FE_local) into the triplet list. Rows of SE map through
/// zmesh global indices; rows of FE_local map through entity index arrays.
template <class SEMat, class FEMat, std::size_t NR, std::size_t NC>
void scatter_kron(Trips& trips, const SEMat& se, const SpectralLineMesh& zmesh, int k,
                  const FEMat& fe, const std::array<int, NR>& rows,
                  const std::array<int, NC>& cols, const DofMap& row_map, const DofMap& col_map,
                  double scale = 1.0) {
    const int n = static_cast<int>(se.rows());
    for (int p = 0; p < n; ++p) {
        const int wr = zmesh.global_index(k, p);
        for (int q = 0; q < n; ++q) {
            const int wc = zmesh.global_index(k, q);
            const double s = scale * se(p, q);
            for (std::size_t i = 0; i < NR; ++i)
                for (std::size_t j = 0; j < NC; ++j)
                    trips.emplace_back(row_map(wr, rows[i]), col_map(wc, cols[j]),
                                       s * fe(i, j));
        }
    }
}

std::array<int, 3> tri_nodes(const TriMesh2D& mesh, int t) {
    return mesh.triangle(t).v;
}

}  // namespace

SpMat assemble_q3d_nodal_stiffness(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                   const ReferenceTensorSet& tensors,
                                   const CoefficientField& alpha) {
    check_field(mesh, zmesh, tensors, alpha);
    const DofMap map = thermal_layout(mesh, zmesh);
    Trips trips;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        if (alpha.is_zero(t)) continue;
        const Eigen::Matrix3d kfe = element_nodal_stiffness(mesh, t);
        const Eigen::Matrix3d mfe = element_nodal_mass(mesh, t);
        const auto nodes = tri_nodes(mesh, t);
        for (int k = 0; k < zmesh.num_elements(); ++k) {
            const SEMatrices se = se_matrices_contracted(alpha.coeffs(t, k), zmesh.length(k),
                                                         tensors, zmesh.order(k));
            scatter_kron(trips, se.M, zmesh, k, kfe, nodes, nodes, map, map);
            scatter_kron(trips, se.K, zmesh, k, mfe, nodes, nodes, map, map);
        }
    }
    SpMat out(map.block_size(), map.block_size());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

SpMat assemble_q3d_nodal_mass(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                              const ReferenceTensorSet& tensors, const CoefficientField& alpha) {
    check_field(mesh, zmesh, tensors, alpha);
    const DofMap map = thermal_layout(mesh, zmesh);
    Trips trips;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        if (alpha.is_zero(t)) continue;
        const Eigen::Matrix3d mfe = element_nodal_mass(mesh, t);
        const auto nodes = tri_nodes(mesh, t);
        for (int k = 0; k < zmesh.num_elements(); ++k) {
            const SEMatrices se = se_matrices_contracted(alpha.coeffs(t, k), zmesh.length(k),
                                                         tensors, zmesh.order(k));
            scatter_kron(trips, se.M, zmesh, k, mfe, nodes, nodes, map, map);
        }
    }
    SpMat out(map.block_size(), map.block_size());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

SpMat assemble_q3d_curlcurl(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                            const ReferenceTensorSet& tensors, const CoefficientField& alpha) {
    check_field(mesh, zmesh, tensors, alpha);
    const MagneticLayout layout = magnetic_layout(mesh, zmesh);
    Trips trips;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        if (alpha.is_zero(t)) continue;
        const Eigen::Matrix3d kt = element_edge_stiffness(mesh, t);
        const Eigen::Matrix3d mt = element_edge_mass(mesh, t);
        const Eigen::Matrix3d kn = element_nodal_stiffness(mesh, t);
        const Eigen::Matrix3d c = element_coupling(mesh, t);
        const auto nodes = tri_nodes(mesh, t);
        const auto edges = mesh.triangle_edges(t);
        for (int k = 0; k < zmesh.num_elements(); ++k) {
            const SEMatrices se = se_matrices_contracted(alpha.coeffs(t, k), zmesh.length(k),
                                                         tensors, zmesh.order(k));
            // (t,t): M^SE (x) K^FE,t + K^SE (x) M^FE,t
            scatter_kron(trips, se.M, zmesh, k, kt, edges, edges, layout.t, layout.t);
            scatter_kron(trips, se.K, zmesh, k, mt, edges, edges, layout.t, layout.t);
            // (t,l): -D^T (x) C, and (l,t) its transpose.
            const Eigen::MatrixXd dt = se.D.transpose();
            scatter_kron(trips, dt, zmesh, k, c, edges, nodes, layout.t, layout.l, -1.0);
            const Eigen::Matrix3d ct = c.transpose();
            scatter_kron(trips, se.D, zmesh, k, ct, nodes, edges, layout.l, layout.t, -1.0);
            // (l,l): M^SE (x) K^FE,l
            scatter_kron(trips, se.M, zmesh, k, kn, nodes, nodes, layout.l, layout.l);
        }
    }
    SpMat out(layout.size(), layout.size());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

SpMat assemble_q3d_sigma_mass(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                              const ReferenceTensorSet& tensors, const CoefficientField& sigma) {
    check_field(mesh, zmesh, tensors, sigma);
    const MagneticLayout layout = magnetic_layout(mesh, zmesh);
    Trips trips;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        if (sigma.is_zero(t)) continue;
        const Eigen::Matrix3d mt = element_edge_mass(mesh, t);
        const Eigen::Matrix3d mn = element_nodal_mass(mesh, t);
        const auto nodes = tri_nodes(mesh, t);
        const auto edges = mesh.triangle_edges(t);
        for (int k = 0; k < zmesh.num_elements(); ++k) {
            const SEMatrices se = se_matrices_contracted(sigma.coeffs(t, k), zmesh.length(k),
                                                         tensors, zmesh.order(k));
            scatter_kron(trips, se.M, zmesh, k, mt, edges, edges, layout.t, layout.t);
            scatter_kron(trips, se.M, zmesh, k, mn, nodes, nodes, layout.l, layout.l);
        }
    }
    SpMat out(layout.size(), layout.size());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

Eigen::VectorXd assemble_q3d_source(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                    const Eigen::VectorXd& winding, double i_s) {
    if (winding.size() != mesh.num_nodes())
        throw std::invalid_argument("assemble_q3d_source: winding vector size mismatch");
    const MagneticLayout layout = magnetic_layout(mesh, zmesh);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(layout.size());
    if (i_s == 0.0) return rhs;
    for (int k = 0; k < zmesh.num_elements(); ++k) {
        const Eigen::VectorXd q1 = se_load_uniform(zmesh.length(k), zmesh.order(k));
        for (int q = 0; q < q1.size(); ++q) {
            const int w = zmesh.global_index(k, q);
            for (int j = 0; j < mesh.num_nodes(); ++j)
                rhs[layout.l(w, j)] += q1[q] * winding[j] * i_s;
        }
    }
    return rhs;
}

}  // namespace q3d
