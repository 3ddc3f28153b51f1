#pragma once

#include "q3d/assembly/loss.hpp"
#include "q3d/assembly/q3d_systems.hpp"
#include "q3d/model/wire_benchmark.hpp"
#include "q3d/solver/linear_solver.hpp"

#include <vector>

namespace q3d {

struct TransientConfig {
    double t_end = 1.0;
    int steps = 25;
    double picard_tol = 1e-6;
    int picard_max_iters = 50;
    double regularization_scale = 1e-6;
    int material_cheb_order = 10;
    LossPath loss_path = LossPath::JointQuadrature;
    bool adapt = false;
    double adapt_threshold = 1e-3;
    double min_element_fraction = 1.0 / 1024.0;
    /// Halve the time step on Picard failure (up to 4 halvings); the
    /// benchmark keeps its fixed schedule and reports the failure instead.
    bool allow_substeps = false;

    void validate() const;
};

struct StepRecord {
    double t = 0.0;
    double e_mag = 0.0;
    double e_th = 0.0;
    int picard_iters = 0;
    double front_lo = 0.0;
    double front_hi = 0.0;
};

/// Quench flags sampled per (thermal triangle, longitudinal sample) plus the
/// derived front positions (NaN when the flag never crosses 0.5).
struct QuenchState {
    std::vector<double> z_samples;
    Eigen::MatrixXd flags;
    double front_lo = std::numeric_limits<double>::quiet_NaN();
    double front_hi = std::numeric_limits<double>::quiet_NaN();
};

/// Transient coupled magneto-thermal solve: implicit Euler in time with a
/// Picard iteration over the material working point in every step.
class CoupledSolver {
public:
    CoupledSolver(Q3DModel model, const ReferenceTensorSet& tensors, TransientConfig config);

    /// One implicit-Euler magnetic solve at the assembled working point.
    Eigen::VectorXd magnetic_step(const Eigen::VectorXd& a_old, double dt);
    /// One implicit-Euler thermal solve at the assembled working point.
    Eigen::VectorXd thermal_step(const Eigen::VectorXd& u_old, double dt,
                                 const Eigen::VectorXd& q_loss);

    /// Assemble the temperature-dependent operators at the given field.
    void assemble_magnetic_at(const Eigen::VectorXd& u);
    void assemble_thermal_at(const Eigen::VectorXd& u);

    /// Working-point loss vector from two successive magnetic solutions.
    Eigen::VectorXd loss_vector(const Eigen::VectorXd& a_new, const Eigen::VectorXd& a_old,
                                double dt, const Eigen::VectorXd& u_wp) const;

    /// Fixed-point iteration of one time step; advances the stored state and
    /// returns the iteration count. Throws on non-convergence (after halving
    /// the step when substeps are allowed).
    int picard_timestep(double dt);

    QuenchState update_quench_state(const Eigen::VectorXd& u) const;

    double magnetic_energy(const Eigen::VectorXd& a) const;
    double thermal_energy(const Eigen::VectorXd& u) const;

    /// Magnetostatic solve at the initial working point; the regularization
    /// epsilon can be scaled for robustness studies.
    double static_magnetic_energy(double eps_factor = 1.0);

    std::vector<StepRecord> run_transient(
        const std::function<void(const StepRecord&)>& on_step = {});

    const Q3DModel& model() const { return model_; }
    const SpectralLineMesh& zmesh() const { return zmesh_; }
    const Eigen::VectorXd& magnetic_field() const { return a_; }
    const Eigen::VectorXd& temperature_field() const { return u_; }
    const QuenchState& quench_state() const { return quench_; }
    int thermal_dofs() const { return thermal_layout(*model_.th_mesh, zmesh_).block_size(); }
    int magnetic_dofs() const { return magnetic_layout(*model_.mag_mesh, zmesh_).size(); }

private:
    void rebuild_operators();
    void adapt_mesh();

    /// theta(thermal triangle centroid, z) evaluator data at a working point.
    Eigen::MatrixXd centroid_traces(const Eigen::VectorXd& u) const;
    double trace_theta(const Eigen::MatrixXd& traces, int th_tri, double z) const;

    CoefficientField nu_field() const;
    CoefficientField nu_tau_field(const Eigen::MatrixXd& traces) const;
    CoefficientField sigma_field(const Eigen::MatrixXd& traces) const;
    CoefficientField lambda_field(const Eigen::MatrixXd& traces) const;
    CoefficientField cv_field(const Eigen::MatrixXd& traces) const;

    Q3DModel model_;
    const ReferenceTensorSet& tensors_;
    TransientConfig config_;

    SpectralLineMesh zmesh_;
    std::vector<int> mag_to_th_tri_;  // -1 outside the wire

    // z-mesh-dependent operators.
    SpMat k_nu_, m_full_;
    Eigen::VectorXd j_source_;
    double epsilon_ = 0.0;
    Constraints mag_constraints_{0};
    Constraints th_constraints_{0};
    Eigen::VectorXd ones_thermal_;

    // Working-point operators.
    SpMat k_nutau_, m_sigma_, k_lambda_, m_cv_;

    SymmetricSparseSolver mag_solver_, th_solver_;
    bool mag_analyzed_ = false, th_analyzed_ = false;

    // State.
    Eigen::VectorXd a_, u_;
    QuenchState quench_;
    double time_ = 0.0;
};

}  // namespace q3d
