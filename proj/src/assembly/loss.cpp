#include "q3d/assembly/loss.hpp"

#include "q3d/fem/assemble.hpp"
#include "q3d/solver/field_eval.hpp"
#include "q3d/spectral/lobatto.hpp"
#include "q3d/spectral/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace q3d {

namespace {

// Degree-5 triangle rule: barycentric points and weights (weights sum to 1).
struct TriRule {
    std::array<Eigen::Vector3d, 7> points;
    std::array<double, 7> weights;
};

const TriRule& tri_rule() {
    static const TriRule rule = [] {
        TriRule r;
        const double s15 = std::sqrt(15.0);
        const double a1 = (6.0 - s15) / 21.0, b1 = (9.0 + 2.0 * s15) / 21.0;
        const double a2 = (6.0 + s15) / 21.0, b2 = (9.0 - 2.0 * s15) / 21.0;
        const double w1 = (155.0 - s15) / 1200.0, w2 = (155.0 + s15) / 1200.0;
        r.points[0] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
        r.weights[0] = 9.0 / 40.0;
        r.points[1] = {a1, a1, b1};
        r.points[2] = {a1, b1, a1};
        r.points[3] = {b1, a1, a1};
        r.points[4] = {a2, a2, b2};
        r.points[5] = {a2, b2, a2};
        r.points[6] = {b2, a2, a2};
        r.weights[1] = r.weights[2] = r.weights[3] = w1;
        r.weights[4] = r.weights[5] = r.weights[6] = w2;
        return r;
    }();
    return rule;
}

int default_z_points(const SpectralLineMesh& zmesh) {
    return (3 * zmesh.max_order() + 1 + 1) / 2 + 1;
}

}  // namespace

Eigen::VectorXd project_density(const TriMesh2D& mesh, const SpectralLineMesh& zmesh,
                                const std::function<double(int, const Eigen::Vector2d&, double)>&
                                    density,
                                int z_quad_points) {
    const DofMap map = thermal_layout(mesh, zmesh);
    Eigen::VectorXd load = Eigen::VectorXd::Zero(map.block_size());
    const auto& rule = tri_rule();
    const int nz = z_quad_points > 0 ? z_quad_points : default_z_points(zmesh);
    const QuadratureRule zrule = gauss_legendre(nz);

    for (int k = 0; k < zmesh.num_elements(); ++k) {
        const int p = zmesh.order(k);
        const double hz = 0.5 * zmesh.length(k);
        std::vector<Eigen::VectorXd> phis(zrule.size());
        for (int iz = 0; iz < zrule.size(); ++iz) phis[iz] = lobatto_all(p, zrule.nodes[iz]);

        for (int t = 0; t < mesh.num_triangles(); ++t) {
            const auto& tri = mesh.triangle(t);
            for (std::size_t qp = 0; qp < rule.points.size(); ++qp) {
                const Eigen::Vector3d& lambda = rule.points[qp];
                Eigen::Vector2d xy = Eigen::Vector2d::Zero();
                for (int j = 0; j < 3; ++j) xy += lambda[j] * mesh.node(tri.v[j]);
                const double wxy = rule.weights[qp] * mesh.area(t);
                for (int iz = 0; iz < zrule.size(); ++iz) {
                    const double z = zmesh.from_reference(k, zrule.nodes[iz]);
                    const double q = density(t, xy, z);
                    const double w = wxy * hz * zrule.weights[iz] * q;
                    if (w == 0.0) continue;
                    for (int lq = 0; lq <= p; ++lq) {
                        const int wz = zmesh.global_index(k, lq);
                        for (int j = 0; j < 3; ++j)
                            load[map(wz, tri.v[j])] += w * phis[iz][lq] * lambda[j];
                    }
                }
            }
        }
    }
    return load;
}

Eigen::VectorXd compute_loss_vector(const LossInputs& in, LossPath path) {
    if (!(in.dt > 0.0)) throw std::invalid_argument("compute_loss_vector: dt must be positive");
    if (!in.mag_mesh || !in.th_mesh || !in.th_tri_to_mag || !in.zmesh || !in.a_new || !in.a_old ||
        !in.materials || !in.th_tri_conductor)
        throw std::invalid_argument("compute_loss_vector: incomplete inputs");

    const TriMesh2D& th = *in.th_mesh;
    const TriMesh2D& mag = *in.mag_mesh;
    const SpectralLineMesh& zmesh = *in.zmesh;
    const MagneticLayout layout = magnetic_layout(mag, zmesh);
    const DofMap map = thermal_layout(th, zmesh);
    const Eigen::VectorXd da = (*in.a_new - *in.a_old) / in.dt;

    Eigen::VectorXd load = Eigen::VectorXd::Zero(map.block_size());
    const auto& rule = tri_rule();
    const QuadratureRule zrule = gauss_legendre(default_z_points(zmesh));

    const Eigen::Vector3d centroid(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);

    for (int k = 0; k < zmesh.num_elements(); ++k) {
        const int p = zmesh.order(k);
        const double hz = 0.5 * zmesh.length(k);
        std::vector<Eigen::VectorXd> phis(zrule.size());
        for (int iz = 0; iz < zrule.size(); ++iz) phis[iz] = lobatto_all(p, zrule.nodes[iz]);

        for (int tt = 0; tt < th.num_triangles(); ++tt) {
            const int tm = (*in.th_tri_to_mag)[tt];
            const auto& tri = th.triangle(tt);
            const double jsq = (*in.th_tri_conductor)[tt] ? in.j_source_sq : 0.0;

            for (int iz = 0; iz < zrule.size(); ++iz) {
                const double xi = zrule.nodes[iz];
                const double z = zmesh.from_reference(k, xi);
                const LossMaterials mat = in.materials(tt, z);
                const double wz = hz * zrule.weights[iz];

                if (path == LossPath::Separable) {
                    const Eigen::Vector3d dA =
                        eval_vector_potential(mag, zmesh, layout, da, tm, centroid, k, xi);
                    const Eigen::Vector3d dB =
                        eval_curl(mag, zmesh, layout, da, tm, centroid, k, xi);
                    const double q = mat.rho * jsq + mat.sigma * dA.squaredNorm() +
                                     mat.nu * mat.tau * dB.squaredNorm();
                    const double w = wz * th.area(tt) / 3.0 * q;
                    if (w == 0.0) continue;
                    for (int lq = 0; lq <= p; ++lq) {
                        const int wg = zmesh.global_index(k, lq);
                        for (int j = 0; j < 3; ++j) load[map(wg, tri.v[j])] += w * phis[iz][lq];
                    }
                    continue;
                }

                for (std::size_t qp = 0; qp < rule.points.size(); ++qp) {
                    const Eigen::Vector3d& lambda = rule.points[qp];
                    const Eigen::Vector3d dA =
                        eval_vector_potential(mag, zmesh, layout, da, tm, lambda, k, xi);
                    const Eigen::Vector3d dB =
                        eval_curl(mag, zmesh, layout, da, tm, lambda, k, xi);
                    const double q = mat.rho * jsq + mat.sigma * dA.squaredNorm() +
                                     mat.nu * mat.tau * dB.squaredNorm();
                    const double w = wz * rule.weights[qp] * th.area(tt) * q;
                    if (w == 0.0) continue;
                    for (int lq = 0; lq <= p; ++lq) {
                        const int wg = zmesh.global_index(k, lq);
                        for (int j = 0; j < 3; ++j)
                            load[map(wg, tri.v[j])] += w * phis[iz][lq] * lambda[j];
                    }
                }
            }
        }
    }
    return load;
}

}  // namespace q3d
