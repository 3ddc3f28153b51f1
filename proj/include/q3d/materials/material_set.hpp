#pragma once

#include "q3d/fem/tri_mesh.hpp"
#include "q3d/materials/curves.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>

namespace q3d {

struct QuenchParams {
    double theta_cs = 6.5;    // current-sharing temperature (K)
    double theta_crit = 9.2;  // critical temperature (K)
    double tau_sc = 0.010;    // IFCC time constant of the superconductor (s)

    void validate() const;
};

/// Sigmoidal quench-state flag in (0, 1), strictly increasing in theta and
/// saturation-safe for extreme arguments.
double quench_flag(double theta, const QuenchParams& params);

struct EffectiveMaterials {
    double tau;    // s
    double sigma;  // S/m
    double rho;    // Ohm m
};

/// Quench-weighted materials: tau = (1-q) tau_SC, sigma = q sigma_Cu(theta),
/// rho = q rho_Cu(theta).
EffectiveMaterials effective_materials(double theta, const QuenchParams& params,
                                       const MaterialCurve& sigma_cu,
                                       const MaterialCurve& rho_cu);

struct RegionMaterial {
    double nu = 0.0;  // reluctivity (m/H), constant per region
    bool conductor = false;
    // Conductor-only curves; air regions leave them unset.
    std::optional<MaterialCurve> sigma_cu, rho_cu, lambda, cv;
    std::optional<QuenchParams> quench;
};

/// Per-region material assignment covering every mesh region id.
struct MaterialSet {
    std::map<int, RegionMaterial> by_region;

    const RegionMaterial& at(int region_id) const;
    void validate_against(const TriMesh2D& mesh) const;
};

/// Chebyshev coefficients of alpha(theta(z)) on one z-element: sample the
/// composed curve at the element's mapped Chebyshev points and transform.
/// `theta_at` receives physical z coordinates.
Eigen::VectorXd material_chebyshev_coeffs(const MaterialCurve& curve,
                                          const std::function<double(double)>& theta_at,
                                          double z_left, double z_right, int order);

/// Defaults for the wire benchmark.
RegionMaterial default_wire_material(double rrr, double copper_fraction,
                                     const QuenchParams& quench);
RegionMaterial default_air_material();

/// Overrides from a material data file: blocks of
///   curve <name> <unit>
///   <theta_K> <value>
///   ...
///   end
/// Known names: sigma_cu, rho_cu, lambda, cv.
std::map<std::string, MaterialCurve> load_material_file(const std::filesystem::path& path);
void apply_material_overrides(RegionMaterial& mat,
                              const std::map<std::string, MaterialCurve>& curves);

constexpr double kVacuumReluctivity = 1.0 / (4.0e-7 * 3.14159265358979323846);

}  // namespace q3d
