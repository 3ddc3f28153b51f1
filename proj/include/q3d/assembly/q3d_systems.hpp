#pragma once

#include "q3d/assembly/dof_map.hpp"
#include "q3d/fem/assemble.hpp"
#include "q3d/spectral/se_matrices.hpp"

#include <functional>

namespace q3d {

/// Material coefficient sampled per (triangle, z-element) as Chebyshev
/// coefficients of its longitudinal profile. A z-independent coefficient
/// stores the single T_0 entry.
class CoefficientField {
public:
    /// Per-triangle constants (z-independent).
    static CoefficientField constant(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                     const Eigen::VectorXd& per_triangle);

    /// Sample alpha(triangle, z) at each element's mapped Chebyshev points of
    /// the given order and transform. Triangles outside `support` (when
    /// non-empty) are zero.
    static CoefficientField sampled(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                    int cheb_order,
                                    const std::function<double(int, double)>& alpha,
                                    const std::vector<int>& support = {});

    const Eigen::VectorXd& coeffs(int tri, int k) const { return coeffs_[index(tri, k)]; }
    bool is_zero(int tri) const { return zero_[tri] != 0; }
    int num_triangles() const { return n_tri_; }
    int num_elements() const { return n_k_; }

private:
    std::size_t index(int tri, int k) const { return static_cast<std::size_t>(tri) * n_k_ + k; }

    int n_tri_ = 0;
    int n_k_ = 0;
    std::vector<Eigen::VectorXd> coeffs_;
    std::vector<char> zero_;
};

/// Thermal stiffness: per element, M^SE_a (x) K^FE,n + K^SE_a (x) M^FE,n.
SpMat assemble_q3d_nodal_stiffness(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                   const ReferenceTensorSet& tensors,
                                   const CoefficientField& alpha);

/// Thermal (or conductivity) mass: per element, M^SE_a (x) M^FE,n.
SpMat assemble_q3d_nodal_mass(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                              const ReferenceTensorSet& tensors, const CoefficientField& alpha);

/// Blocked curl-curl matrix on the magnetic layout:
///   (t,t)  M^SE (x) K^FE,t + K^SE (x) M^FE,t
///   (t,l)  -D^SE^T (x) C^FE,tl     (l,t) its transpose
///   (l,l)  M^SE (x) K^FE,l
SpMat assemble_q3d_curlcurl(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                            const ReferenceTensorSet& tensors, const CoefficientField& alpha);

/// Block-diagonal conductivity mass on the magnetic layout:
///   (t,t) M^SE (x) M^FE,t ; (l,l) M^SE (x) M^FE,l.
SpMat assemble_q3d_sigma_mass(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                              const ReferenceTensorSet& tensors, const CoefficientField& sigma);

/// Source vector: zero transversal block, q1^SE (x) (X i_s) longitudinal.
Eigen::VectorXd assemble_q3d_source(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                    const Eigen::VectorXd& winding, double i_s);

}  // namespace q3d
