#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace q3d {

/// Precomputed reference-interval integrals of a Chebyshev polynomial against
/// two Lobatto shape functions (or their derivatives), indexed (m, p, q):
///
///   K(m)(p,q) = int T_m phi_q' phi_p' dxi
///   M(m)(p,q) = int T_m phi_q  phi_p  dxi
///   D(m)(p,q) = int T_m phi_q' phi_p  dxi
///
/// Geometry and material data enter later through Jacobian scaling and
/// contraction with Chebyshev material coefficients.
class ReferenceTensorSet {
public:
    ReferenceTensorSet(int max_basis_order, int max_cheb_order,
                       std::vector<Eigen::MatrixXd> K, std::vector<Eigen::MatrixXd> M,
                       std::vector<Eigen::MatrixXd> D);

    int max_basis_order() const { return p_max_; }
    int max_cheb_order() const { return m_max_; }

    const Eigen::MatrixXd& K(int m) const { return at(refK_, m); }
    const Eigen::MatrixXd& M(int m) const { return at(refM_, m); }
    const Eigen::MatrixXd& D(int m) const { return at(refD_, m); }

    static const std::string& basis_id();

private:
    const Eigen::MatrixXd& at(const std::vector<Eigen::MatrixXd>& t, int m) const;

    int p_max_;
    int m_max_;
    std::vector<Eigen::MatrixXd> refK_, refM_, refD_;
};

/// Compute the tensors with a Gauss-Legendre rule exact for the maximal
/// integrand degree.
ReferenceTensorSet build_reference_tensors(int max_basis_order, int max_cheb_order);

/// Cache file name for a given size, e.g. "ref_tensors_hlobatto1_p6_m16.bin".
std::string reference_tensor_cache_name(int max_basis_order, int max_cheb_order);

void save_reference_tensors(const ReferenceTensorSet& set, const std::filesystem::path& file);

struct TensorCacheLoad {
    std::optional<ReferenceTensorSet> set;
    bool corrupt = false;  // file present but failed the checksum/header check
};

TensorCacheLoad load_reference_tensors(const std::filesystem::path& file);

/// Load from `dir` if a valid cache exists, otherwise build and persist.
/// A corrupt cache is rebuilt with a warning on stderr.
ReferenceTensorSet load_or_build_reference_tensors(int max_basis_order, int max_cheb_order,
                                                   const std::filesystem::path& dir);

}  // namespace q3d
