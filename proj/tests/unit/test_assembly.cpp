#include "doctest.h"

#include "oracle3d.hpp"
#include "q3d/assembly/loss.hpp"
#include "q3d/assembly/q3d_systems.hpp"
#include "q3d/model/wire_benchmark.hpp"
#include "q3d/solver/field_eval.hpp"
#include "q3d/spectral/chebyshev.hpp"
#include "q3d/spectral/lobatto.hpp"
#include "q3d/spectral/quadrature.hpp"
#include "test_meshes.hpp"

#include <random>

using namespace q3d;
using test::dense;

namespace {

const ReferenceTensorSet& tensors() {
    static const ReferenceTensorSet set = build_reference_tensors(6, 12);
    return set;
}

test::Coefficient constant3d(double v) {
    return [v](int, const Eigen::Vector2d&, double) { return v; };
}

CoefficientField const_field(const TriMesh2D& mesh, const SpectralLineMesh& zmesh, double v) {
    return CoefficientField::constant(mesh, zmesh,
                                      Eigen::VectorXd::Constant(mesh.num_triangles(), v));
}

double rel_err(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("nonlinear SE contraction") {
    const double h = 0.7;
    const int order = 5;

    SUBCASE("T_0 coefficient reproduces the constant-coefficient matrices") {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(4);
        c[0] = 2.5;
        const auto a = se_matrices_contracted(c, h, tensors(), order);
        const auto b = se_matrices_constant(2.5, h, tensors(), order);
        CHECK((a.K - b.K).cwiseAbs().maxCoeff() == 0.0);
        CHECK((a.M - b.M).cwiseAbs().maxCoeff() == 0.0);
        CHECK((a.D - b.D).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("alpha = T_1 matches direct Gauss quadrature") {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(2);
        c[1] = 1.0;
        const auto a = se_matrices_contracted(c, h, tensors(), order);
        const auto rule = gauss_legendre(24);
        for (int p = 0; p <= order; ++p) {
            for (int q = 0; q <= order; ++q) {
                const double k_pq = rule.integrate([&](double xi) {
                    return xi * lobatto_shape_deriv(q, xi) * lobatto_shape_deriv(p, xi);
                });
                CHECK(a.K(p, q) == doctest::Approx((2.0 / h) * k_pq).epsilon(1e-12));
                const double d_pq = rule.integrate([&](double xi) {
                    return xi * lobatto_shape_deriv(q, xi) * lobatto_shape(p, xi);
                });
                CHECK(a.D(p, q) == doctest::Approx(d_pq).epsilon(1e-12));
            }
        }
    }

    SUBCASE("contraction is linear (disjoint coefficient supports combine exactly)") {
        // Reference-length element so the Jacobian scaling is the identity
        // and the sums associate identically on both sides.
        Eigen::VectorXd a = Eigen::VectorXd::Zero(5), b = Eigen::VectorXd::Zero(5);
        a[0] = 1.3;
        b[3] = -0.4;
        const auto ma = se_matrices_contracted(a, 2.0, tensors(), order);
        const auto mb = se_matrices_contracted(b, 2.0, tensors(), order);
        const auto mab = se_matrices_contracted(a + b, 2.0, tensors(), order);
        CHECK((mab.K - (ma.K + mb.K)).cwiseAbs().maxCoeff() == 0.0);
        CHECK((mab.M - (ma.M + mb.M)).cwiseAbs().maxCoeff() == 0.0);
        CHECK((mab.D - (ma.D + mb.D)).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("polynomial composition matches quadrature to 1e-10") {
        // alpha(z) = 3 + z^2 - 0.5 z^3 on the element, expanded at order 8.
        const auto alpha = [](double xi) {
            return 3.0 + xi * xi - 0.5 * xi * xi * xi;
        };
        const int M = 8;
        const auto pts = chebyshev_points(M);
        Eigen::VectorXd samples(M + 1);
        for (int j = 0; j <= M; ++j) samples[j] = alpha(pts[j]);
        const auto c = chebyshev_coeffs(samples);
        const auto mats = se_matrices_contracted(c, h, tensors(), order);

        const auto rule = gauss_legendre(32);
        for (int p = 0; p <= order; ++p) {
            for (int q = 0; q <= order; ++q) {
                const double m_pq = rule.integrate([&](double xi) {
                    return alpha(xi) * lobatto_shape(q, xi) * lobatto_shape(p, xi);
                });
                CHECK(mats.M(p, q) == doctest::Approx((h / 2.0) * m_pq).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("q3d curl-curl matches the brute-force 3D oracle") {
    const auto mesh = test::perturbed_rect_mesh(2, 2);  // 8 triangles
    SpectralLineMesh zmesh;
    zmesh.breakpoints = {0.0, 0.4, 1.0};
    zmesh.orders = {3, 2};
    zmesh.validate();

    const auto assembled =
        dense(assemble_q3d_curlcurl(mesh, zmesh, tensors(), const_field(mesh, zmesh, 2.0)));
    const auto oracle = test::oracle_curlcurl(mesh, zmesh, constant3d(2.0));
    CHECK(rel_err(assembled, oracle) < 1e-12);

    SUBCASE("assembled matrix is symmetric") {
        CHECK((assembled - assembled.transpose()).cwiseAbs().maxCoeff() <
              1e-14 * assembled.cwiseAbs().maxCoeff());
    }

    SUBCASE("discrete gradients are in the null space") {
        // psi(x,y,z) = u(x,y) g(z) with P1 u and polynomial g of element
        // order: grad psi = (g grad u, u g') is exactly representable, the
        // transversal part through Whitney edge coefficients u_b - u_a and
        // the longitudinal part through nodal coefficients of u g'.
        const MagneticLayout layout = magnetic_layout(mesh, zmesh);
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        Eigen::VectorXd u(mesh.num_nodes());
        for (int j = 0; j < mesh.num_nodes(); ++j) u[j] = dist(rng);

        const auto g = [](double z) { return 0.3 + z - 0.25 * z * z; };
        const auto gp = [](double z) { return 1.0 - 0.5 * z; };
        const Eigen::VectorXd g_coef = interpolate_profile(zmesh, 1, g);
        const Eigen::VectorXd gp_coef = interpolate_profile(zmesh, 1, gp);

        Eigen::VectorXd a = Eigen::VectorXd::Zero(layout.size());
        for (int w = 0; w < zmesh.num_functions(); ++w) {
            for (int e = 0; e < mesh.num_edges(); ++e) {
                const auto& ed = mesh.edge(e);
                a[layout.t(w, e)] = g_coef[w] * (u[ed[1]] - u[ed[0]]);
            }
            for (int j = 0; j < mesh.num_nodes(); ++j)
                a[layout.l(w, j)] = gp_coef[w] * u[j];
        }

        const Eigen::VectorXd ka = assembled * a;
        CHECK(ka.cwiseAbs().maxCoeff() <
              1e-10 * assembled.cwiseAbs().maxCoeff() * a.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("q3d sigma mass matches the oracle") {
    const auto mesh = test::perturbed_rect_mesh(2, 1);
    const auto zmesh = SpectralLineMesh::uniform(0.0, 0.8, 2, 3);
    const auto assembled =
        dense(assemble_q3d_sigma_mass(mesh, zmesh, tensors(), const_field(mesh, zmesh, 1.7)));
    const auto oracle = test::oracle_sigma_mass(mesh, zmesh, constant3d(1.7));
    CHECK(rel_err(assembled, oracle) < 1e-12);
}

TEST_CASE("q3d thermal system matches the oracle and its invariants") {
    const auto mesh = test::perturbed_rect_mesh(1, 2);
    const auto zmesh = SpectralLineMesh::uniform(0.0, 1.0, 2, 3);

    const auto k =
        dense(assemble_q3d_nodal_stiffness(mesh, zmesh, tensors(), const_field(mesh, zmesh, 3.1)));
    const auto m =
        dense(assemble_q3d_nodal_mass(mesh, zmesh, tensors(), const_field(mesh, zmesh, 0.9)));
    CHECK(rel_err(k, test::oracle_thermal_stiffness(mesh, zmesh, constant3d(3.1))) < 1e-12);
    CHECK(rel_err(m, test::oracle_thermal_mass(mesh, zmesh, constant3d(0.9))) < 1e-12);

    // Constant field: vertex modes one, interiors zero.
    const DofMap map = thermal_layout(mesh, zmesh);
    Eigen::VectorXd ones = Eigen::VectorXd::Zero(map.block_size());
    for (int v = 0; v <= zmesh.num_elements(); ++v)
        for (int j = 0; j < mesh.num_nodes(); ++j) ones[map(zmesh.vertex_index(v), j)] = 1.0;
    CHECK((k * ones).cwiseAbs().maxCoeff() < 1e-12 * k.cwiseAbs().maxCoeff());

    // Total mass: 1^T M 1 = cv * volume.
    double area = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) area += mesh.area(t);
    CHECK(ones.dot(m * ones) == doctest::Approx(0.9 * area * 1.0).epsilon(1e-12));
}

TEST_CASE("nonlinear coefficient fields agree with the pointwise oracle") {
    const auto mesh = test::perturbed_rect_mesh(1, 1);
    const auto zmesh = SpectralLineMesh::uniform(0.0, 1.0, 2, 3);

    // Smooth per-triangle coefficient with polynomial z-dependence (degree 3
    // <= sampling order, so the expansion is exact).
    const auto alpha_fn = [](int t, double z) {
        return 1.0 + 0.3 * t + z * z * (1.0 - 0.4 * z);
    };
    const auto field = CoefficientField::sampled(mesh, zmesh, 6, alpha_fn);
    const auto assembled = dense(assemble_q3d_nodal_stiffness(mesh, zmesh, tensors(), field));
    const auto oracle = test::oracle_thermal_stiffness(
        mesh, zmesh,
        [&](int t, const Eigen::Vector2d&, double z) { return alpha_fn(t, z); });
    CHECK(rel_err(assembled, oracle) < 1e-10);
}

TEST_CASE("q3d source vector") {
    const auto mesh = test::unit_square_two_tris();
    const auto zmesh = SpectralLineMesh::uniform(0.0, 2.0, 3, 1);
    const auto winding = assemble_winding_vector(mesh, {0});

    SUBCASE("zero current gives the zero vector, doubling doubles") {
        CHECK(assemble_q3d_source(mesh, zmesh, winding, 0.0).cwiseAbs().maxCoeff() == 0.0);
        const auto j1 = assemble_q3d_source(mesh, zmesh, winding, 2.0);
        const auto j2 = assemble_q3d_source(mesh, zmesh, winding, 4.0);
        CHECK((j2 - 2.0 * j1).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("order-1 entries telescope to i_s times the length") {
        const auto j = assemble_q3d_source(mesh, zmesh, winding, 3.0);
        CHECK(j.sum() == doctest::Approx(3.0 * 2.0).epsilon(1e-13));
        CHECK(j.head(zmesh.num_functions() * mesh.num_edges()).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("matches the 3D oracle at higher order") {
        const auto zmesh2 = SpectralLineMesh::uniform(0.0, 1.5, 2, 4);
        const auto j = assemble_q3d_source(mesh, zmesh2, winding, 5.0);
        const auto oracle = test::oracle_source(mesh, zmesh2, {0}, 5.0);
        CHECK((j - oracle).cwiseAbs().maxCoeff() < 1e-12 * oracle.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("density projection matches the 3D oracle") {
    const auto mesh = test::perturbed_rect_mesh(2, 1);
    const auto zmesh = SpectralLineMesh::uniform(0.0, 1.0, 2, 3);
    const auto density = [](const Eigen::Vector2d& p, double z) {
        return 1.0 + p.x() + 0.5 * p.y() * z + z * z;
    };
    const auto projected = project_density(
        mesh, zmesh,
        [&](int, const Eigen::Vector2d& p, double z) { return density(p, z); });
    const auto oracle = test::oracle_density_projection(mesh, zmesh, density);
    CHECK((projected - oracle).cwiseAbs().maxCoeff() < 1e-12 * oracle.cwiseAbs().maxCoeff());
}

TEST_CASE("loss vector properties") {
    const auto mesh = test::unit_square_two_tris();
    const auto zmesh = SpectralLineMesh::uniform(0.0, 1.0, 2, 2);
    const MagneticLayout layout = magnetic_layout(mesh, zmesh);
    std::vector<int> tri_map = {0, 1};
    std::vector<char> conductor = {1, 1};

    LossInputs in;
    in.mag_mesh = &mesh;
    in.th_mesh = &mesh;
    in.th_tri_to_mag = &tri_map;
    in.zmesh = &zmesh;
    in.dt = 0.1;
    in.th_tri_conductor = &conductor;
    in.j_source_sq = 4.0;

    std::mt19937 rng(77);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd a_new(layout.size()), a_old(layout.size());
    for (int i = 0; i < layout.size(); ++i) {
        a_old[i] = dist(rng);
        a_new[i] = a_old[i] + 0.1 * dist(rng);
    }
    in.a_new = &a_new;
    in.a_old = &a_old;

    SUBCASE("unquenched materials give the zero vector") {
        in.materials = [](int, double) { return LossMaterials{0.0, 0.0, 0.0, 1.0}; };
        CHECK(compute_loss_vector(in, LossPath::JointQuadrature).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("a_new == a_old leaves only the source term") {
        in.a_new = &a_old;
        in.materials = [](int, double) { return LossMaterials{2.0, 3.0, 0.5, 1.0}; };
        const auto q = compute_loss_vector(in, LossPath::JointQuadrature);
        // rho |J_s|^2 = 0.5 * 4 = 2 uniform: against the constant test field
        // the total power is 2 * volume.
        const DofMap map = thermal_layout(mesh, zmesh);
        Eigen::VectorXd ones = Eigen::VectorXd::Zero(map.block_size());
        for (int v = 0; v <= zmesh.num_elements(); ++v)
            for (int j = 0; j < mesh.num_nodes(); ++j) ones[map(zmesh.vertex_index(v), j)] = 1.0;
        CHECK(ones.dot(q) == doctest::Approx(2.0 * 1.0).epsilon(1e-12));
        // Both paths agree for a separable (constant) density.
        const auto q_sep = compute_loss_vector(in, LossPath::Separable);
        CHECK((q - q_sep).cwiseAbs().maxCoeff() < 1e-12 * q.cwiseAbs().maxCoeff());
    }

    SUBCASE("manufactured uniform-sigma Ohmic loss matches the 3D oracle") {
        in.materials = [](int, double) { return LossMaterials{2.5, 0.0, 0.0, 0.0}; };
        in.j_source_sq = 0.0;
        const auto q = compute_loss_vector(in, LossPath::JointQuadrature);

        const Eigen::VectorXd da = (a_new - a_old) / in.dt;
        const auto oracle = test::oracle_density_projection(
            mesh, zmesh, [&](const Eigen::Vector2d& p, double z) {
                const int t = locate_triangle(mesh, p);
                const int k = zmesh.element_of(z);
                const Eigen::Vector3d dA = eval_vector_potential(
                    mesh, zmesh, layout, da, t, barycentric(mesh, t, p), k,
                    zmesh.to_reference(k, z));
                return 2.5 * dA.squaredNorm();
            });
        CHECK((q - oracle).cwiseAbs().maxCoeff() < 1e-10 * oracle.cwiseAbs().maxCoeff());
    }

    SUBCASE("non-positive dt is rejected") {
        in.dt = 0.0;
        in.materials = [](int, double) { return LossMaterials{}; };
        CHECK_THROWS(compute_loss_vector(in, LossPath::JointQuadrature));
    }
}

TEST_CASE("total loss power is non-negative for random states") {
    const auto mesh = test::perturbed_rect_mesh(2, 2);
    const auto zmesh = SpectralLineMesh::uniform(0.0, 1.0, 2, 3);
    const MagneticLayout layout = magnetic_layout(mesh, zmesh);
    std::vector<int> tri_map(mesh.num_triangles());
    for (int t = 0; t < mesh.num_triangles(); ++t) tri_map[t] = t;
    std::vector<char> conductor(mesh.num_triangles(), 1);

    std::mt19937 rng(101);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXd a_new(layout.size()), a_old(layout.size());
        for (int i = 0; i < layout.size(); ++i) {
            a_old[i] = dist(rng);
            a_new[i] = dist(rng);
        }
        LossInputs in;
        in.mag_mesh = &mesh;
        in.th_mesh = &mesh;
        in.th_tri_to_mag = &tri_map;
        in.zmesh = &zmesh;
        in.a_new = &a_new;
        in.a_old = &a_old;
        in.dt = 0.05;
        in.th_tri_conductor = &conductor;
        in.j_source_sq = std::abs(dist(rng));
        in.materials = [&](int t, double z) {
            return LossMaterials{0.5 + 0.1 * t, 0.02, 1.0 + 0.5 * std::sin(z), 2.0};
        };
        const auto q = compute_loss_vector(in, LossPath::JointQuadrature);

        const DofMap map = thermal_layout(mesh, zmesh);
        Eigen::VectorXd ones = Eigen::VectorXd::Zero(map.block_size());
        for (int v = 0; v <= zmesh.num_elements(); ++v)
            for (int j = 0; j < mesh.num_nodes(); ++j) ones[map(zmesh.vertex_index(v), j)] = 1.0;
        CHECK(ones.dot(q) >= 0.0);
    }
}
