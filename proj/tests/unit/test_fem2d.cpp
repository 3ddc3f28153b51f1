#include "doctest.h"

#include "q3d/fem/assemble.hpp"
#include "q3d/fem/structured.hpp"
#include "test_meshes.hpp"

#include <random>

using namespace q3d;
using test::dense;
using test::perturbed_rect_mesh;
using test::shuffled_copy;
using test::unit_right_triangle;
using test::unit_square_two_tris;

namespace {

Eigen::VectorXd ones_alpha(const TriMesh2D& mesh) {
    return Eigen::VectorXd::Ones(mesh.num_triangles());
}

// Dense quadrature oracle on one triangle: integrate f(lambda) with a
// degree-6 rule mapped to the element.
double tri_quad(const TriMesh2D& mesh, int t,
                const std::function<double(const Eigen::Vector3d&)>& f) {
    // 12-point Dunavant degree-6 rule.
    static const std::vector<std::array<double, 4>> pts = [] {
        std::vector<std::array<double, 4>> v;
        auto push3 = [&](double a, double b, double c, double w) {
            v.push_back({a, b, c, w});
            v.push_back({c, a, b, w});
            v.push_back({b, c, a, w});
        };
        push3(0.873821971016996, 0.063089014491502, 0.063089014491502, 0.050844906370207);
        push3(0.501426509658179, 0.249286745170910, 0.249286745170911, 0.116786275726379);
        push3(0.636502499121399, 0.310352451033785, 0.053145049844816, 0.082851075618374);
        push3(0.636502499121399, 0.053145049844816, 0.310352451033785, 0.082851075618374);
        return v;
    }();
    double s = 0.0;
    for (const auto& p : pts) s += p[3] * f(Eigen::Vector3d(p[0], p[1], p[2]));
    return s * mesh.area(t);
}

}  // namespace

TEST_CASE("nodal stiffness on the unit right triangle") {
    const auto mesh = unit_right_triangle();
    const auto k = dense(assemble_nodal_stiffness(mesh, ones_alpha(mesh)));
    Eigen::Matrix3d expected;
    expected << 2, -1, -1, -1, 1, 0, -1, 0, 1;
    expected *= 0.5;
    CHECK((k - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("stiffness row sums vanish and scale linearly in alpha") {
    const auto mesh = perturbed_rect_mesh(4, 3);
    const auto k1 = dense(assemble_nodal_stiffness(mesh, ones_alpha(mesh)));
    for (int i = 0; i < mesh.num_nodes(); ++i)
        CHECK(std::abs(k1.row(i).sum()) < 1e-12 * k1.cwiseAbs().maxCoeff());
    const auto k2 = dense(assemble_nodal_stiffness(mesh, 2.0 * ones_alpha(mesh)));
    CHECK((k2 - 2.0 * k1).cwiseAbs().maxCoeff() < 1e-13 * k1.cwiseAbs().maxCoeff());
}

TEST_CASE("nodal mass on the unit right triangle") {
    const auto mesh = unit_right_triangle();
    const auto m = dense(assemble_nodal_mass(mesh, ones_alpha(mesh)));
    Eigen::Matrix3d expected;
    expected << 2, 1, 1, 1, 2, 1, 1, 1, 2;
    expected /= 24.0;
    CHECK((m - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("mass entries sum to the weighted area") {
    const auto mesh = perturbed_rect_mesh(3, 5, 2.0, 1.5);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(0.1, 3.0);
    Eigen::VectorXd alpha(mesh.num_triangles());
    double weighted_area = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        alpha[t] = dist(rng);
        weighted_area += alpha[t] * mesh.area(t);
    }
    const auto m = dense(assemble_nodal_mass(mesh, alpha));
    CHECK(m.sum() == doctest::Approx(weighted_area).epsilon(1e-13));

    // Zeroing one element's coefficient removes exactly its contribution.
    const double removed = alpha[2] * mesh.area(2);
    alpha[2] = 0.0;
    const auto m2 = dense(assemble_nodal_mass(mesh, alpha));
    CHECK(m2.sum() == doctest::Approx(weighted_area - removed).epsilon(1e-12));
}

TEST_CASE("edge stiffness is rank one per element") {
    const auto mesh = unit_right_triangle();
    const Eigen::Matrix3d kt = element_edge_stiffness(mesh, 0);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(kt);
    CHECK(svd.singularValues()[0] > 0.0);
    CHECK(svd.singularValues()[1] < 1e-12 * svd.singularValues()[0]);
}

TEST_CASE("edge mass is symmetric positive definite") {
    const auto mesh = perturbed_rect_mesh(3, 3);
    const auto mats = assemble_edge_matrices(mesh, ones_alpha(mesh));
    const auto m = dense(mats.M);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-14 * m.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("edge matrices match the pointwise quadrature oracle") {
    const auto mesh = perturbed_rect_mesh(2, 2);
    const auto mats = assemble_edge_matrices(mesh, ones_alpha(mesh));
    const auto ktl = assemble_coupling(mesh, ones_alpha(mesh));

    Eigen::MatrixXd mt_oracle = Eigen::MatrixXd::Zero(mesh.num_edges(), mesh.num_edges());
    Eigen::MatrixXd kt_oracle = Eigen::MatrixXd::Zero(mesh.num_edges(), mesh.num_edges());
    Eigen::MatrixXd c_oracle = Eigen::MatrixXd::Zero(mesh.num_edges(), mesh.num_nodes());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& g = mesh.barycentric_gradients(t);
        for (int i = 0; i < 3; ++i) {
            const int ei = mesh.triangle_edges(t)[i];
            for (int j = 0; j < 3; ++j) {
                const int ej = mesh.triangle_edges(t)[j];
                mt_oracle(ei, ej) += tri_quad(mesh, t, [&](const Eigen::Vector3d& l) {
                    return whitney_value(mesh, t, i, l).dot(whitney_value(mesh, t, j, l));
                });
                kt_oracle(ei, ej) +=
                    mesh.area(t) * whitney_curl(mesh, t, i) * whitney_curl(mesh, t, j);
                const int nj = mesh.triangle(t).v[j];
                c_oracle(ei, nj) += tri_quad(mesh, t, [&](const Eigen::Vector3d& l) {
                    return whitney_value(mesh, t, i, l).dot(g.col(j));
                });
            }
        }
    }
    const double scale = mt_oracle.cwiseAbs().maxCoeff();
    CHECK((dense(mats.M) - mt_oracle).cwiseAbs().maxCoeff() < 1e-12 * scale);
    CHECK((dense(mats.K) - kt_oracle).cwiseAbs().maxCoeff() <
          1e-12 * kt_oracle.cwiseAbs().maxCoeff());
    CHECK((dense(ktl) - c_oracle).cwiseAbs().maxCoeff() < 1e-12 * c_oracle.cwiseAbs().maxCoeff());
}

TEST_CASE("flipping an edge orientation flips its row and column") {
    const auto mesh = perturbed_rect_mesh(2, 2);
    const int flip = 3;
    const auto mats = assemble_edge_matrices(mesh, ones_alpha(mesh));

    // Re-assemble by quadrature with the orientation of one edge reversed.
    Eigen::MatrixXd m_flipped = Eigen::MatrixXd::Zero(mesh.num_edges(), mesh.num_edges());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        for (int i = 0; i < 3; ++i) {
            const int ei = mesh.triangle_edges(t)[i];
            const double si = ei == flip ? -1.0 : 1.0;
            for (int j = 0; j < 3; ++j) {
                const int ej = mesh.triangle_edges(t)[j];
                const double sj = ej == flip ? -1.0 : 1.0;
                m_flipped(ei, ej) += si * sj * tri_quad(mesh, t, [&](const Eigen::Vector3d& l) {
                    return whitney_value(mesh, t, i, l).dot(whitney_value(mesh, t, j, l));
                });
            }
        }
    }
    Eigen::VectorXd s = Eigen::VectorXd::Ones(mesh.num_edges());
    s[flip] = -1.0;
    const Eigen::MatrixXd expected = s.asDiagonal() * dense(mats.M) * s.asDiagonal();
    CHECK((m_flipped - expected).cwiseAbs().maxCoeff() <
          1e-12 * expected.cwiseAbs().maxCoeff());
}

TEST_CASE("coupling annihilates constants and vanishes for zero alpha") {
    const auto mesh = perturbed_rect_mesh(3, 4);
    const auto c = assemble_coupling(mesh, ones_alpha(mesh));
    const Eigen::VectorXd cones = c * Eigen::VectorXd::Ones(mesh.num_nodes());
    CHECK(cones.cwiseAbs().maxCoeff() < 1e-12 * dense(c).cwiseAbs().maxCoeff());
    const auto c0 = assemble_coupling(mesh, Eigen::VectorXd::Zero(mesh.num_triangles()));
    CHECK(dense(c0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coupling entry on the unit right triangle, symbolic value") {
    const auto mesh = unit_right_triangle();
    // edge (0->1) against grad N_2: mean(w) . (0,1) * area = 1/6.
    const Eigen::Matrix3d c = element_coupling(mesh, 0);
    CHECK(c(0, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("winding vector normalization and support") {
    const auto mesh = unit_square_two_tris();
    const auto x = assemble_winding_vector(mesh, {0});
    CHECK(x.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x[0] == doctest::Approx(1.0 / 3.0));
    CHECK(x[1] == doctest::Approx(1.0 / 6.0));
    CHECK(x[2] == doctest::Approx(1.0 / 3.0));
    CHECK(x[3] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("winding vector: nodes away from the conductor get zero") {
    std::map<int, RegionInfo> regions{{0, {"wire", true}}, {1, {"air", false}}};
    const auto mesh = build_structured_mesh(
        uniform_breaks(0.0, 3.0, 3), uniform_breaks(0.0, 1.0, 1),
        [](double x, double) { return x < 1.0 ? 0 : 1; }, regions);
    const auto x = assemble_winding_vector(mesh, {0});
    CHECK(x.sum() == doctest::Approx(1.0));
    for (int j = 0; j < mesh.num_nodes(); ++j)
        if (mesh.node(j).x() > 1.0 + 1e-12) CHECK(x[j] == 0.0);
    CHECK_THROWS(assemble_winding_vector(mesh, {99}));
}

TEST_CASE("loss vector examples") {
    const auto mesh = unit_right_triangle();
    SUBCASE("unit density gives area/3 per node") {
        const auto f = fe_loss_vector(mesh, {{1.0, 1.0, 1.0}});
        for (int j = 0; j < 3; ++j) CHECK(f[j] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    }
    SUBCASE("zero density gives the zero vector") {
        const auto f = fe_loss_vector(mesh, {{0.0, 0.0, 0.0}});
        CHECK(f.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("entries sum to the integral of q") {
        const auto mesh2 = perturbed_rect_mesh(3, 3);
        std::vector<std::array<double, 3>> samples(mesh2.num_triangles());
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> dist(0.0, 2.0);
        double integral = 0.0;
        for (int t = 0; t < mesh2.num_triangles(); ++t) {
            for (auto& v : samples[t]) v = dist(rng);
            integral +=
                mesh2.area(t) * (samples[t][0] + samples[t][1] + samples[t][2]) / 3.0;
        }
        const auto f = fe_loss_vector(mesh2, samples);
        CHECK(f.sum() == doctest::Approx(integral).epsilon(1e-13));
    }
    SUBCASE("negative density is rejected") {
        CHECK_THROWS(fe_loss_vector(mesh, {{1.0, -0.5, 1.0}}));
    }
}

TEST_CASE("assembly is independent of triangle enumeration order") {
    const auto mesh = perturbed_rect_mesh(4, 4);
    const auto shuffled = shuffled_copy(mesh);
    // Same node set, so matrices must agree entry-wise.
    const auto k1 = dense(assemble_nodal_stiffness(mesh, ones_alpha(mesh)));
    const auto k2 = dense(assemble_nodal_stiffness(shuffled, ones_alpha(shuffled)));
    CHECK((k1 - k2).cwiseAbs().maxCoeff() < 1e-14 * k1.cwiseAbs().maxCoeff());
}

TEST_CASE("refinement invariance of the interpolated quadratic energy") {
    const auto coarse = perturbed_rect_mesh(4, 4, 1.0, 1.0, 0.0);
    const auto fine = perturbed_rect_mesh(8, 8, 1.0, 1.0, 0.0);
    const auto quadratic = [](const Eigen::Vector2d& p) {
        return p.x() * p.x() + p.x() * p.y() + p.y() * p.y();
    };
    const double exact = 16.0 / 3.0;  // int |grad f|^2 over the unit square

    const auto energy = [&](const TriMesh2D& mesh) {
        Eigen::VectorXd v(mesh.num_nodes());
        for (int j = 0; j < mesh.num_nodes(); ++j) v[j] = quadratic(mesh.node(j));
        const auto k = assemble_nodal_stiffness(mesh, ones_alpha(mesh));
        return v.dot(k * v);
    };
    const double err_coarse = std::abs(energy(coarse) - exact);
    const double err_fine = std::abs(energy(fine) - exact);
    CHECK(err_fine < 0.6 * err_coarse);
    CHECK(err_coarse < 0.05 * exact);
}
