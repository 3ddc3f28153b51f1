#include "q3d/io/config.hpp"
#include "q3d/io/csv.hpp"
#include "q3d/io/vtk.hpp"
#include "q3d/solver/transient.hpp"
#include "q3d/spectral/reference_tensors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace {

namespace fs = std::filesystem;

int cmd_run(const std::string& config_path, int steps_override, const std::string& out_override) {
    q3d::RunConfig cfg = q3d::load_run_config(config_path);
    if (steps_override >= 0) cfg.transient.steps = steps_override;
    if (!out_override.empty()) cfg.output.dir = out_override;
    cfg.validate();

    const auto tensors = q3d::load_or_build_reference_tensors(cfg.tensor_pmax, cfg.tensor_mmax,
                                                              cfg.resolved_cache_dir());
    q3d::Q3DModel model = q3d::build_wire_benchmark(cfg.model);
    q3d::CoupledSolver solver(std::move(model), tensors, cfg.transient);

    fs::create_directories(cfg.output.dir);
    q3d::CsvWriter csv(fs::path(cfg.output.dir) / cfg.output.csv);

    std::printf("magnetic DoF %d, thermal DoF %d\n", solver.magnetic_dofs(),
                solver.thermal_dofs());
    int step = 0;
    const auto on_step = [&](const q3d::StepRecord& rec) {
        csv.write(rec);
        std::printf("t=%-10.4g picard=%-3d E_mag=%-14.6e E_th=%-14.6e front=[%g, %g]\n", rec.t,
                    rec.picard_iters, rec.e_mag, rec.e_th, rec.front_lo, rec.front_hi);
        if (cfg.output.vtk_every > 0 && step % cfg.output.vtk_every == 0) {
            const auto file =
                fs::path(cfg.output.dir) / ("fields_step" + std::to_string(step) + ".vtk");
            q3d::export_fields(file, solver.model(), solver.zmesh(), solver.temperature_field(),
                               solver.magnetic_field(), cfg.output.vtk_dims);
        }
        ++step;
    };

    solver.run_transient(on_step);
    return 0;
}

int cmd_precompute(int pmax, int mmax, const std::string& cache_dir) {
    fs::path dir = cache_dir;
    if (dir.empty()) {
        q3d::RunConfig defaults;
        dir = defaults.resolved_cache_dir();
    }
    const fs::path file = dir / q3d::reference_tensor_cache_name(pmax, mmax);
    const auto existing = q3d::load_reference_tensors(file);
    if (existing.set) {
        std::printf("cache valid: %s\n", file.c_str());
        return 0;
    }
    q3d::load_or_build_reference_tensors(pmax, mmax, dir);
    std::printf("cache written: %s\n", file.c_str());
    return 0;
}

int cmd_export(const std::string& config_path, int step, const std::string& out_override) {
    q3d::RunConfig cfg = q3d::load_run_config(config_path);
    if (!out_override.empty()) cfg.output.dir = out_override;
    if (step < 0 || step > cfg.transient.steps)
        throw std::invalid_argument("export: step outside the configured schedule");
    cfg.transient.steps = step;

    const auto tensors = q3d::load_or_build_reference_tensors(cfg.tensor_pmax, cfg.tensor_mmax,
                                                              cfg.resolved_cache_dir());
    q3d::CoupledSolver solver(q3d::build_wire_benchmark(cfg.model), tensors, cfg.transient);
    solver.run_transient();

    fs::create_directories(cfg.output.dir);
    const auto file = fs::path(cfg.output.dir) / ("fields_step" + std::to_string(step) + ".vtk");
    q3d::export_fields(file, solver.model(), solver.zmesh(), solver.temperature_field(),
                       solver.magnetic_field(), cfg.output.vtk_dims);
    std::printf("wrote %s\n", file.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-3D magneto-thermal quench solver"};
    app.require_subcommand(1);

    std::string config_path, out_dir, cache_dir;
    int steps_override = -1, export_step = 0, pmax = 8, mmax = 16;

    auto* run = app.add_subcommand("run", "run the transient simulation");
    run->add_option("--config", config_path, "JSON configuration file")->required();
    run->add_option("--steps", steps_override, "override the number of time steps");
    run->add_option("--out", out_dir, "override the output directory");

    auto* pre = app.add_subcommand("precompute-tensors", "build the reference tensor cache");
    pre->add_option("--pmax", pmax, "maximum basis order")->required();
    pre->add_option("--mmax", mmax, "maximum Chebyshev order")->required();
    pre->add_option("--cache-dir", cache_dir, "cache directory");

    auto* exp = app.add_subcommand("export", "write a field snapshot for one step");
    exp->add_option("--config", config_path, "JSON configuration file")->required();
    exp->add_option("--step", export_step, "time step to export")->required();
    exp->add_option("--out", out_dir, "override the output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, steps_override, out_dir);
        if (pre->parsed()) return cmd_precompute(pmax, mmax, cache_dir);
        if (exp->parsed()) return cmd_export(config_path, export_step, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
