#include "q3d/spectral/reference_tensors.hpp"

#include "q3d/spectral/lobatto.hpp"
#include "q3d/spectral/quadrature.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace q3d {

namespace {

constexpr char kMagic[8] = {'Q', '3', 'D', 'R', 'T', '0', '0', '1'};

uint64_t tensor_checksum(const std::vector<Eigen::MatrixXd>& t) {
    uint64_t h = 1469598103934665603ull;
    for (const auto& mat : t) {
        const auto* bytes = reinterpret_cast<const unsigned char*>(mat.data());
        const std::size_t n = sizeof(double) * mat.size();
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ull;
        }
    }
    return h;
}

}  // namespace

ReferenceTensorSet::ReferenceTensorSet(int max_basis_order, int max_cheb_order,
                                       std::vector<Eigen::MatrixXd> K,
                                       std::vector<Eigen::MatrixXd> M,
                                       std::vector<Eigen::MatrixXd> D)
    : p_max_(max_basis_order),
      m_max_(max_cheb_order),
      refK_(std::move(K)),
      refM_(std::move(M)),
      refD_(std::move(D)) {
    if (p_max_ < 1 || m_max_ < 0)
        throw std::invalid_argument("ReferenceTensorSet: need P_max >= 1, M_max >= 0");
    const auto count = static_cast<std::size_t>(m_max_ + 1);
    if (refK_.size() != count || refM_.size() != count || refD_.size() != count)
        throw std::invalid_argument("ReferenceTensorSet: tensor count mismatch");
}

const std::string& ReferenceTensorSet::basis_id() {
    static const std::string id = "hier-lobatto-v1";
    return id;
}

const Eigen::MatrixXd& ReferenceTensorSet::at(const std::vector<Eigen::MatrixXd>& t,
                                              int m) const {
    if (m < 0 || m > m_max_)
        throw std::out_of_range("ReferenceTensorSet: Chebyshev index out of range");
    return t[static_cast<std::size_t>(m)];
}

ReferenceTensorSet build_reference_tensors(int max_basis_order, int max_cheb_order) {
    if (max_basis_order < 1 || max_cheb_order < 0)
        throw std::invalid_argument("build_reference_tensors: need P_max >= 1, M_max >= 0");

    const int p = max_basis_order;
    const int mm = max_cheb_order;
    const int n_quad = (mm + 2 * p + 1 + 1) / 2 + 2;
    const QuadratureRule rule = gauss_legendre(n_quad);

    std::vector<Eigen::MatrixXd> refK(mm + 1, Eigen::MatrixXd::Zero(p + 1, p + 1));
    std::vector<Eigen::MatrixXd> refM(mm + 1, Eigen::MatrixXd::Zero(p + 1, p + 1));
    std::vector<Eigen::MatrixXd> refD(mm + 1, Eigen::MatrixXd::Zero(p + 1, p + 1));

    for (int i = 0; i < rule.size(); ++i) {
        const double xi = rule.nodes[i];
        const double w = rule.weights[i];
        const Eigen::VectorXd phi = lobatto_all(p, xi);
        const Eigen::VectorXd dphi = lobatto_all_deriv(p, xi);

        double t0 = 1.0, t1 = xi;
        for (int m = 0; m <= mm; ++m) {
            const double tm = (m == 0) ? 1.0 : (m == 1 ? xi : 2.0 * xi * t1 - t0);
            if (m >= 2) {
                t0 = t1;
                t1 = tm;
            }
            const double wt = w * tm;
            // Fill p <= q and mirror so symmetry holds to the last bit.
            for (int pp = 0; pp <= p; ++pp) {
                for (int q = pp; q <= p; ++q) {
                    refK[m](pp, q) += wt * dphi[q] * dphi[pp];
                    refM[m](pp, q) += wt * phi[q] * phi[pp];
                }
                for (int q = 0; q <= p; ++q) refD[m](pp, q) += wt * dphi[q] * phi[pp];
            }
        }
    }
    for (int m = 0; m <= mm; ++m) {
        for (int pp = 0; pp <= p; ++pp) {
            for (int q = pp + 1; q <= p; ++q) {
                refK[m](q, pp) = refK[m](pp, q);
                refM[m](q, pp) = refM[m](pp, q);
            }
        }
    }
    return ReferenceTensorSet(p, mm, std::move(refK), std::move(refM), std::move(refD));
}

std::string reference_tensor_cache_name(int max_basis_order, int max_cheb_order) {
    return "ref_tensors_hlobatto1_p" + std::to_string(max_basis_order) + "_m" +
           std::to_string(max_cheb_order) + ".bin";
}

void save_reference_tensors(const ReferenceTensorSet& set, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write tensor cache: " + file.string());

    const int p = set.max_basis_order();
    const int mm = set.max_cheb_order();

    std::vector<Eigen::MatrixXd> all;
    for (int m = 0; m <= mm; ++m) all.push_back(set.K(m));
    for (int m = 0; m <= mm; ++m) all.push_back(set.M(m));
    for (int m = 0; m <= mm; ++m) all.push_back(set.D(m));
    const uint64_t checksum = tensor_checksum(all);

    out.write(kMagic, sizeof(kMagic));
    char basis[16] = {};
    std::strncpy(basis, ReferenceTensorSet::basis_id().c_str(), sizeof(basis) - 1);
    out.write(basis, sizeof(basis));
    const uint32_t up = static_cast<uint32_t>(p), um = static_cast<uint32_t>(mm);
    out.write(reinterpret_cast<const char*>(&up), sizeof(up));
    out.write(reinterpret_cast<const char*>(&um), sizeof(um));
    out.write(reinterpret_cast<const char*>(&checksum), sizeof(checksum));
    for (const auto& mat : all)
        out.write(reinterpret_cast<const char*>(mat.data()),
                  static_cast<std::streamsize>(sizeof(double) * mat.size()));
    if (!out) throw std::runtime_error("tensor cache write failed: " + file.string());
}

TensorCacheLoad load_reference_tensors(const std::filesystem::path& file) {
    TensorCacheLoad result;
    std::ifstream in(file, std::ios::binary);
    if (!in) return result;  // missing, not corrupt

    char magic[8];
    char basis[16];
    uint32_t up = 0, um = 0;
    uint64_t checksum = 0;
    in.read(magic, sizeof(magic));
    in.read(basis, sizeof(basis));
    in.read(reinterpret_cast<char*>(&up), sizeof(up));
    in.read(reinterpret_cast<char*>(&um), sizeof(um));
    in.read(reinterpret_cast<char*>(&checksum), sizeof(checksum));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0 ||
        std::string(basis) != ReferenceTensorSet::basis_id() || up < 1 || up > 64 || um > 256) {
        result.corrupt = true;
        return result;
    }

    const int p = static_cast<int>(up), mm = static_cast<int>(um);
    std::vector<Eigen::MatrixXd> all(3 * (mm + 1), Eigen::MatrixXd(p + 1, p + 1));
    for (auto& mat : all)
        in.read(reinterpret_cast<char*>(mat.data()),
                static_cast<std::streamsize>(sizeof(double) * mat.size()));
    if (!in || in.peek() != std::ifstream::traits_type::eof() || tensor_checksum(all) != checksum) {
        result.corrupt = true;
        return result;
    }

    std::vector<Eigen::MatrixXd> K(all.begin(), all.begin() + (mm + 1));
    std::vector<Eigen::MatrixXd> M(all.begin() + (mm + 1), all.begin() + 2 * (mm + 1));
    std::vector<Eigen::MatrixXd> D(all.begin() + 2 * (mm + 1), all.end());
    result.set.emplace(p, mm, std::move(K), std::move(M), std::move(D));
    return result;
}

ReferenceTensorSet load_or_build_reference_tensors(int max_basis_order, int max_cheb_order,
                                                   const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto file = dir / reference_tensor_cache_name(max_basis_order, max_cheb_order);

    TensorCacheLoad loaded = load_reference_tensors(file);
    if (loaded.set && loaded.set->max_basis_order() == max_basis_order &&
        loaded.set->max_cheb_order() == max_cheb_order)
        return std::move(*loaded.set);
    if (loaded.corrupt)
        std::cerr << "warning: reference tensor cache " << file
                  << " failed its checksum; rebuilding\n";

    ReferenceTensorSet set = build_reference_tensors(max_basis_order, max_cheb_order);
    save_reference_tensors(set, file);
    return set;
}

}  // namespace q3d
