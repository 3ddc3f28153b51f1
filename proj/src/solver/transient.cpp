#include "q3d/solver/transient.hpp"

#include "q3d/solver/adapt.hpp"
#include "q3d/solver/field_eval.hpp"
#include "q3d/spectral/lobatto.hpp"

#include <cmath>
#include <stdexcept>

namespace q3d {

void TransientConfig::validate() const {
    if (steps < 0) throw std::invalid_argument("TransientConfig: steps must be >= 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("TransientConfig: t_end must be positive");
    if (!(picard_tol > 0.0))
        throw std::invalid_argument("TransientConfig: tolerance must be positive");
    if (picard_max_iters < 1)
        throw std::invalid_argument("TransientConfig: need at least one Picard iteration");
    if (material_cheb_order < 0)
        throw std::invalid_argument("TransientConfig: negative Chebyshev order");
}

CoupledSolver::CoupledSolver(Q3DModel model, const ReferenceTensorSet& tensors,
                             TransientConfig config)
    : model_(std::move(model)), tensors_(tensors), config_(std::move(config)) {
    config_.validate();
    if (config_.material_cheb_order > tensors_.max_cheb_order())
        throw std::invalid_argument(
            "CoupledSolver: material Chebyshev order exceeds the tensor cache M_max; rebuild "
            "the cache with a larger --mmax");
    zmesh_ = model_.zmesh;
    if (zmesh_.max_order() > tensors_.max_basis_order())
        throw std::invalid_argument(
            "CoupledSolver: element order exceeds the tensor cache P_max; rebuild the cache "
            "with a larger --pmax");

    mag_to_th_tri_.assign(model_.mag_mesh->num_triangles(), -1);
    for (std::size_t tt = 0; tt < model_.th_tri_to_mag.size(); ++tt)
        mag_to_th_tri_[model_.th_tri_to_mag[tt]] = static_cast<int>(tt);

    rebuild_operators();

    a_ = Eigen::VectorXd::Zero(magnetic_layout(*model_.mag_mesh, zmesh_).size());
    u_ = model_.initial_thermal_field(zmesh_);
    quench_ = update_quench_state(u_);
}

void CoupledSolver::rebuild_operators() {
    const auto& mag = *model_.mag_mesh;
    const auto& th = *model_.th_mesh;

    k_nu_ = assemble_q3d_curlcurl(mag, zmesh_, tensors_, nu_field());
    {
        const CoefficientField unity =
            CoefficientField::constant(mag, zmesh_, Eigen::VectorXd::Ones(mag.num_triangles()));
        m_full_ = assemble_q3d_sigma_mass(mag, zmesh_, tensors_, unity);
    }
    epsilon_ = config_.regularization_scale *
               (k_nu_.diagonal().maxCoeff() / m_full_.diagonal().maxCoeff());

    const Eigen::VectorXd winding = assemble_winding_vector(mag, {kRegionWire});
    j_source_ = assemble_q3d_source(mag, zmesh_, winding, model_.source_current);

    mag_constraints_ = model_.magnetic_constraints();
    th_constraints_ = model_.thermal_constraints(zmesh_);

    const DofMap th_map = thermal_layout(th, zmesh_);
    ones_thermal_ = Eigen::VectorXd::Zero(th_map.block_size());
    for (int v = 0; v <= zmesh_.num_elements(); ++v)
        for (int j = 0; j < th.num_nodes(); ++j)
            ones_thermal_[th_map(zmesh_.vertex_index(v), j)] = 1.0;

    mag_analyzed_ = th_analyzed_ = false;
}

Eigen::MatrixXd CoupledSolver::centroid_traces(const Eigen::VectorXd& u) const {
    const auto& th = *model_.th_mesh;
    const DofMap map = thermal_layout(th, zmesh_);
    Eigen::MatrixXd traces(th.num_triangles(), zmesh_.num_functions());
    for (int t = 0; t < th.num_triangles(); ++t) {
        const auto& tri = th.triangle(t);
        for (int w = 0; w < zmesh_.num_functions(); ++w)
            traces(t, w) =
                (u[map(w, tri.v[0])] + u[map(w, tri.v[1])] + u[map(w, tri.v[2])]) / 3.0;
    }
    return traces;
}

double CoupledSolver::trace_theta(const Eigen::MatrixXd& traces, int th_tri, double z) const {
    const int k = zmesh_.element_of(z);
    const double xi = zmesh_.to_reference(k, z);
    const int p = zmesh_.order(k);
    const Eigen::VectorXd phi = lobatto_all(p, xi);
    double theta = 0.0;
    for (int q = 0; q <= p; ++q) theta += phi[q] * traces(th_tri, zmesh_.global_index(k, q));
    return theta;
}

CoefficientField CoupledSolver::nu_field() const {
    const auto& mag = *model_.mag_mesh;
    Eigen::VectorXd nu(mag.num_triangles());
    for (int t = 0; t < mag.num_triangles(); ++t)
        nu[t] = model_.materials.at(mag.triangle(t).region).nu;
    return CoefficientField::constant(mag, zmesh_, nu);
}

CoefficientField CoupledSolver::nu_tau_field(const Eigen::MatrixXd& traces) const {
    const auto& mag = *model_.mag_mesh;
    const auto wire = mag.triangles_in_regions({kRegionWire});
    return CoefficientField::sampled(
        mag, zmesh_, config_.material_cheb_order,
        [&](int t, double z) {
            const RegionMaterial& mat = model_.materials.at(mag.triangle(t).region);
            const double theta = trace_theta(traces, mag_to_th_tri_[t], z);
            return mat.nu * (1.0 - quench_flag(theta, *mat.quench)) * mat.quench->tau_sc;
        },
        wire);
}

CoefficientField CoupledSolver::sigma_field(const Eigen::MatrixXd& traces) const {
    const auto& mag = *model_.mag_mesh;
    const auto wire = mag.triangles_in_regions({kRegionWire});
    return CoefficientField::sampled(
        mag, zmesh_, config_.material_cheb_order,
        [&](int t, double z) {
            const RegionMaterial& mat = model_.materials.at(mag.triangle(t).region);
            const double theta = trace_theta(traces, mag_to_th_tri_[t], z);
            return quench_flag(theta, *mat.quench) * (*mat.sigma_cu)(theta);
        },
        wire);
}

CoefficientField CoupledSolver::lambda_field(const Eigen::MatrixXd& traces) const {
    const auto& th = *model_.th_mesh;
    return CoefficientField::sampled(th, zmesh_, config_.material_cheb_order,
                                     [&](int t, double z) {
                                         const RegionMaterial& mat =
                                             model_.materials.at(th.triangle(t).region);
                                         return (*mat.lambda)(trace_theta(traces, t, z));
                                     });
}

CoefficientField CoupledSolver::cv_field(const Eigen::MatrixXd& traces) const {
    const auto& th = *model_.th_mesh;
    return CoefficientField::sampled(th, zmesh_, config_.material_cheb_order,
                                     [&](int t, double z) {
                                         const RegionMaterial& mat =
                                             model_.materials.at(th.triangle(t).region);
                                         return (*mat.cv)(trace_theta(traces, t, z));
                                     });
}

void CoupledSolver::assemble_magnetic_at(const Eigen::VectorXd& u) {
    const Eigen::MatrixXd traces = centroid_traces(u);
    const auto& mag = *model_.mag_mesh;
    k_nutau_ = assemble_q3d_curlcurl(mag, zmesh_, tensors_, nu_tau_field(traces));
    m_sigma_ = assemble_q3d_sigma_mass(mag, zmesh_, tensors_, sigma_field(traces));
}

void CoupledSolver::assemble_thermal_at(const Eigen::VectorXd& u) {
    const Eigen::MatrixXd traces = centroid_traces(u);
    const auto& th = *model_.th_mesh;
    k_lambda_ = assemble_q3d_nodal_stiffness(th, zmesh_, tensors_, lambda_field(traces));
    m_cv_ = assemble_q3d_nodal_mass(th, zmesh_, tensors_, cv_field(traces));
}

Eigen::VectorXd CoupledSolver::magnetic_step(const Eigen::VectorXd& a_old, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("magnetic_step: dt must be positive");
    const SpMat transient = k_nutau_ + m_sigma_;
    const SpMat a_sys = k_nu_ + epsilon_ * m_full_ + (1.0 / dt) * transient;
    const Eigen::VectorXd rhs = j_source_ + (1.0 / dt) * (transient * a_old);

    ReducedSystem sys = apply_dirichlet(a_sys, rhs, mag_constraints_);
    if (!mag_analyzed_) {
        mag_solver_.analyze(sys.A);
        mag_analyzed_ = true;
    }
    return sys.expand(mag_solver_.solve(sys.A, sys.b), mag_constraints_);
}

Eigen::VectorXd CoupledSolver::thermal_step(const Eigen::VectorXd& u_old, double dt,
                                            const Eigen::VectorXd& q_loss) {
    if (!(dt > 0.0)) throw std::invalid_argument("thermal_step: dt must be positive");
    const SpMat a_sys = k_lambda_ + (1.0 / dt) * m_cv_;
    const Eigen::VectorXd rhs = q_loss + (1.0 / dt) * (m_cv_ * u_old);

    ReducedSystem sys = apply_dirichlet(a_sys, rhs, th_constraints_);
    if (!th_analyzed_) {
        th_solver_.analyze(sys.A);
        th_analyzed_ = true;
    }
    return sys.expand(th_solver_.solve(sys.A, sys.b), th_constraints_);
}

Eigen::VectorXd CoupledSolver::loss_vector(const Eigen::VectorXd& a_new,
                                           const Eigen::VectorXd& a_old, double dt,
                                           const Eigen::VectorXd& u_wp) const {
    const Eigen::MatrixXd traces = centroid_traces(u_wp);
    const auto& th = *model_.th_mesh;

    LossInputs in;
    in.mag_mesh = model_.mag_mesh.get();
    in.th_mesh = model_.th_mesh.get();
    in.th_tri_to_mag = &model_.th_tri_to_mag;
    in.zmesh = &zmesh_;
    in.a_new = &a_new;
    in.a_old = &a_old;
    in.dt = dt;
    in.th_tri_conductor = &model_.th_tri_conductor;
    const double j_density = model_.source_current / model_.conductor_area;
    in.j_source_sq = j_density * j_density;
    in.materials = [&traces, &th, this](int th_tri, double z) {
        const RegionMaterial& mat = model_.materials.at(th.triangle(th_tri).region);
        const double theta = trace_theta(traces, th_tri, z);
        const EffectiveMaterials eff =
            effective_materials(theta, *mat.quench, *mat.sigma_cu, *mat.rho_cu);
        return LossMaterials{eff.sigma, eff.tau, eff.rho, mat.nu};
    };
    return compute_loss_vector(in, config_.loss_path);
}

int CoupledSolver::picard_timestep(double dt) {
    const Eigen::VectorXd a_old = a_;
    const Eigen::VectorXd u_old = u_;

    auto attempt = [&](double step_dt) -> int {
        Eigen::VectorXd u_wp = u_old;
        Eigen::VectorXd u_prev = u_old;
        double prev_delta = std::numeric_limits<double>::infinity();
        for (int iter = 1; iter <= config_.picard_max_iters; ++iter) {
            assemble_magnetic_at(u_wp);
            const Eigen::VectorXd a_new = magnetic_step(a_old, step_dt);
            const Eigen::VectorXd q = loss_vector(a_new, a_old, step_dt, u_wp);
            assemble_thermal_at(u_wp);
            const Eigen::VectorXd u_new = thermal_step(u_old, step_dt, q);

            const double scale = std::max(u_new.cwiseAbs().maxCoeff(), 1e-300);
            const double delta = (u_new - u_prev).cwiseAbs().maxCoeff() / scale;

            if (delta < config_.picard_tol) {
                a_ = a_new;
                u_ = u_new;
                quench_ = update_quench_state(u_);
                return iter;
            }
            // Under-relax the working point when the residual grows.
            u_wp = (delta > prev_delta) ? Eigen::VectorXd(0.5 * (u_new + u_wp)) : u_new;
            u_prev = u_new;
            prev_delta = delta;
        }
        return -1;
    };

    int iters = attempt(dt);
    if (iters > 0) {
        time_ += dt;
        return iters;
    }
    if (!config_.allow_substeps)
        throw std::runtime_error("picard_timestep: no convergence within " +
                                 std::to_string(config_.picard_max_iters) + " iterations");

    double sub_dt = dt;
    for (int halving = 1; halving <= 4; ++halving) {
        sub_dt *= 0.5;
        const int pieces = 1 << halving;
        a_ = a_old;
        u_ = u_old;
        int total = 0;
        bool ok = true;
        for (int piece = 0; piece < pieces; ++piece) {
            const int it = attempt(sub_dt);
            if (it < 0) {
                ok = false;
                break;
            }
            total += it;
        }
        if (ok) {
            time_ += dt;
            return total;
        }
    }
    throw std::runtime_error("picard_timestep: no convergence after 4 step halvings");
}

QuenchState CoupledSolver::update_quench_state(const Eigen::VectorXd& u) const {
    const auto& th = *model_.th_mesh;
    const Eigen::MatrixXd traces = centroid_traces(u);

    QuenchState state;
    for (int k = 0; k < zmesh_.num_elements(); ++k) {
        const int ns = zmesh_.order(k) + 3;
        for (int i = 0; i <= ns; ++i) {
            const double z = zmesh_.breakpoints[k] + zmesh_.length(k) * i / ns;
            if (!state.z_samples.empty() && z <= state.z_samples.back() + 1e-15) continue;
            state.z_samples.push_back(z);
        }
    }
    const int n_s = static_cast<int>(state.z_samples.size());
    state.flags.resize(th.num_triangles(), n_s);
    for (int t = 0; t < th.num_triangles(); ++t) {
        const auto& mat = model_.materials.at(th.triangle(t).region);
        for (int s = 0; s < n_s; ++s)
            state.flags(t, s) =
                quench_flag(trace_theta(traces, t, state.z_samples[s]), *mat.quench);
    }

    const Eigen::VectorXd agg = state.flags.colwise().maxCoeff();
    for (int s = 0; s + 1 < n_s; ++s) {
        const double f0 = agg[s] - 0.5, f1 = agg[s + 1] - 0.5;
        if (f0 == 0.0 || f0 * f1 < 0.0) {
            const double z = (f0 == 0.0)
                                 ? state.z_samples[s]
                                 : state.z_samples[s] + (state.z_samples[s + 1] -
                                                         state.z_samples[s]) *
                                                            f0 / (f0 - f1);
            if (std::isnan(state.front_lo)) state.front_lo = z;
            state.front_hi = z;
        }
    }
    return state;
}

double CoupledSolver::magnetic_energy(const Eigen::VectorXd& a) const {
    return 0.5 * a.dot(k_nu_ * a);
}

double CoupledSolver::thermal_energy(const Eigen::VectorXd& u) const {
    const Eigen::MatrixXd traces = centroid_traces(u);
    const SpMat m_cv =
        assemble_q3d_nodal_mass(*model_.th_mesh, zmesh_, tensors_, cv_field(traces));
    return u.dot(m_cv * ones_thermal_);
}

double CoupledSolver::static_magnetic_energy(double eps_factor) {
    const SpMat a_sys = k_nu_ + (eps_factor * epsilon_) * m_full_;
    ReducedSystem sys = apply_dirichlet(a_sys, j_source_, mag_constraints_);
    SymmetricSparseSolver solver;
    const Eigen::VectorXd a = sys.expand(solver.solve(sys.A, sys.b), mag_constraints_);
    return magnetic_energy(a);
}

void CoupledSolver::adapt_mesh() {
    const auto& th = *model_.th_mesh;
    const DofMap map = thermal_layout(th, zmesh_);

    std::vector<double> indicators(zmesh_.num_elements(), 0.0);
    const Eigen::MatrixXd traces = centroid_traces(u_);
    for (int k = 0; k < zmesh_.num_elements(); ++k) {
        for (int t = 0; t < th.num_triangles(); ++t) {
            const Eigen::VectorXd trace = traces.row(t).transpose();
            indicators[k] = std::max(indicators[k], trace_decay_indicator(zmesh_, k, trace));
        }
    }

    const double min_len =
        config_.min_element_fraction * (zmesh_.z_max() - zmesh_.z_min());
    AdaptOutcome outcome =
        adapt_z_mesh(zmesh_, indicators, config_.adapt_threshold, min_len);
    if (outcome.hit_min_length)
        std::fprintf(stderr, "warning: z-mesh refinement stopped at the minimum element length\n");
    if (!outcome.changed) return;

    const auto& mag = *model_.mag_mesh;
    u_ = transfer_field(zmesh_, outcome.mesh, th.num_nodes(), u_);
    // The magnetic vector transfers block-wise: edges then nodes.
    const MagneticLayout old_layout = magnetic_layout(mag, zmesh_);
    Eigen::VectorXd a_t = a_.head(old_layout.t.block_size());
    Eigen::VectorXd a_l = a_.tail(old_layout.l.block_size());
    a_t = transfer_field(zmesh_, outcome.mesh, mag.num_edges(), a_t);
    a_l = transfer_field(zmesh_, outcome.mesh, mag.num_nodes(), a_l);

    zmesh_ = outcome.mesh;
    a_.resize(a_t.size() + a_l.size());
    a_ << a_t, a_l;
    rebuild_operators();
    quench_ = update_quench_state(u_);
}

std::vector<StepRecord> CoupledSolver::run_transient(
    const std::function<void(const StepRecord&)>& on_step) {
    std::vector<StepRecord> records;
    const double dt = config_.t_end / std::max(config_.steps, 1);

    const auto record_state = [&](double t, int iters) {
        StepRecord rec;
        rec.t = t;
        rec.e_mag = magnetic_energy(a_);
        rec.e_th = thermal_energy(u_);
        rec.picard_iters = iters;
        rec.front_lo = quench_.front_lo;
        rec.front_hi = quench_.front_hi;
        records.push_back(rec);
        if (on_step) on_step(rec);
    };

    record_state(0.0, 0);
    for (int step = 1; step <= config_.steps; ++step) {
        int iters = 0;
        try {
            iters = picard_timestep(dt);
        } catch (const std::exception& e) {
            throw std::runtime_error("step " + std::to_string(step) + ": " + e.what());
        }
        if (config_.adapt) adapt_mesh();
        record_state(step * dt, iters);
    }
    return records;
}

}  // namespace q3d
