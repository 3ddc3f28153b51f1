#include "q3d/solver/adapt.hpp"

#include "q3d/solver/field_eval.hpp"
#include "q3d/spectral/chebyshev.hpp"
#include "q3d/spectral/lobatto.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>

namespace q3d {

double trace_decay_indicator(const SpectralLineMesh& zmesh, int k, const Eigen::VectorXd& trace) {
    const int p = zmesh.order(k);
    const Eigen::VectorXd xi = chebyshev_points(p);
    Eigen::VectorXd samples(p + 1);
    for (int i = 0; i <= p; ++i)
        samples[i] = eval_trace(zmesh, trace, zmesh.from_reference(k, xi[i]));
    const Eigen::VectorXd c = chebyshev_coeffs(samples);
    const double peak = c.cwiseAbs().maxCoeff();
    if (peak == 0.0 || p < 2) return 0.0;
    return (std::abs(c[p]) + std::abs(c[p - 1])) / peak;
}

AdaptOutcome adapt_z_mesh(const SpectralLineMesh& zmesh, const std::vector<double>& indicators,
                          double threshold, double min_length) {
    if (static_cast<int>(indicators.size()) != zmesh.num_elements())
        throw std::invalid_argument("adapt_z_mesh: indicator count mismatch");

    AdaptOutcome out;
    out.mesh.breakpoints.push_back(zmesh.breakpoints.front());
    for (int k = 0; k < zmesh.num_elements(); ++k) {
        const bool flagged = indicators[k] > threshold;
        const bool refinable = zmesh.length(k) > 2.0 * min_length;
        if (flagged && !refinable) out.hit_min_length = true;
        if (flagged && refinable) {
            out.mesh.breakpoints.push_back(0.5 * (zmesh.breakpoints[k] + zmesh.breakpoints[k + 1]));
            out.mesh.breakpoints.push_back(zmesh.breakpoints[k + 1]);
            out.mesh.orders.push_back(zmesh.order(k));
            out.mesh.orders.push_back(zmesh.order(k));
            out.changed = true;
        } else {
            out.mesh.breakpoints.push_back(zmesh.breakpoints[k + 1]);
            out.mesh.orders.push_back(zmesh.order(k));
        }
    }
    out.mesh.validate();
    return out;
}

Eigen::VectorXd transfer_field(const SpectralLineMesh& old_mesh,
                               const SpectralLineMesh& new_mesh, int n_2d,
                               const Eigen::VectorXd& u) {
    if (u.size() != static_cast<long>(old_mesh.num_functions()) * n_2d)
        throw std::invalid_argument("transfer_field: field size mismatch");

    Eigen::VectorXd out(static_cast<long>(new_mesh.num_functions()) * n_2d);
    for (int k = 0; k < new_mesh.num_elements(); ++k) {
        const int p = new_mesh.order(k);
        const Eigen::VectorXd xi = chebyshev_points(p);

        Eigen::MatrixXd vander(p + 1, p + 1);
        // Old-basis values at the new collocation points, one column per entity.
        Eigen::MatrixXd values = Eigen::MatrixXd::Zero(p + 1, n_2d);
        for (int i = 0; i <= p; ++i) {
            vander.row(i) = lobatto_all(p, xi[i]).transpose();
            const double z = new_mesh.from_reference(k, xi[i]);
            const int ko = old_mesh.element_of(z);
            const int po = old_mesh.order(ko);
            const Eigen::VectorXd phi = lobatto_all(po, old_mesh.to_reference(ko, z));
            for (int q = 0; q <= po; ++q) {
                const long w = old_mesh.global_index(ko, q);
                if (phi[q] == 0.0) continue;
                values.row(i) += phi[q] * u.segment(w * n_2d, n_2d).transpose();
            }
        }
        const Eigen::MatrixXd local = vander.partialPivLu().solve(values);
        for (int q = 0; q <= p; ++q) {
            const long w = new_mesh.global_index(k, q);
            out.segment(w * n_2d, n_2d) = local.row(q).transpose();
        }
    }
    return out;
}

}  // namespace q3d
