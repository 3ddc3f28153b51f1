#include "q3d/materials/material_set.hpp"

#include "q3d/spectral/chebyshev.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace q3d {

void QuenchParams::validate() const {
    if (!(theta_cs < theta_crit))
        throw std::invalid_argument("QuenchParams: require theta_cs < theta_crit");
    if (theta_crit == theta_cs)
        throw std::invalid_argument("QuenchParams: theta_crit equals theta_cs");
    if (tau_sc < 0.0) throw std::invalid_argument("QuenchParams: tau_SC must be >= 0");
}

double quench_flag(double theta, const QuenchParams& params) {
    params.validate();
    const double arg = -16.0 * (theta - params.theta_crit) / (params.theta_crit - params.theta_cs) + 8.0;
    if (arg > 700.0) return 0.0;   // exp would overflow; deep superconducting
    if (arg < -700.0) return 1.0;  // fully quenched
    return 1.0 / (1.0 + std::exp(arg));
}

EffectiveMaterials effective_materials(double theta, const QuenchParams& params,
                                       const MaterialCurve& sigma_cu,
                                       const MaterialCurve& rho_cu) {
    const double q = quench_flag(theta, params);
    return {(1.0 - q) * params.tau_sc, q * sigma_cu(theta), q * rho_cu(theta)};
}

const RegionMaterial& MaterialSet::at(int region_id) const {
    const auto it = by_region.find(region_id);
    if (it == by_region.end())
        throw std::out_of_range("MaterialSet: no material for region " +
                                std::to_string(region_id));
    return it->second;
}

void MaterialSet::validate_against(const TriMesh2D& mesh) const {
    for (const auto& [id, info] : mesh.regions()) {
        const auto& mat = at(id);
        if (!(mat.nu > 0.0))
            throw std::invalid_argument("MaterialSet: region " + info.name +
                                        " needs positive reluctivity");
        if (mat.conductor) {
            if (!mat.sigma_cu || !mat.rho_cu || !mat.lambda || !mat.cv || !mat.quench)
                throw std::invalid_argument("MaterialSet: conductor region " + info.name +
                                            " is missing curves or quench parameters");
            mat.quench->validate();
        }
    }
}

Eigen::VectorXd material_chebyshev_coeffs(const MaterialCurve& curve,
                                          const std::function<double(double)>& theta_at,
                                          double z_left, double z_right, int order) {
    if (order < 0) throw std::invalid_argument("material_chebyshev_coeffs: negative order");
    if (!(z_right > z_left))
        throw std::invalid_argument("material_chebyshev_coeffs: empty element");
    const Eigen::VectorXd xi = chebyshev_points(order);
    Eigen::VectorXd samples(order + 1);
    for (int j = 0; j <= order; ++j) {
        const double z = z_left + 0.5 * (xi[j] + 1.0) * (z_right - z_left);
        samples[j] = curve(theta_at(z));
    }
    return chebyshev_coeffs(samples);
}

RegionMaterial default_wire_material(double rrr, double copper_fraction,
                                     const QuenchParams& quench) {
    RegionMaterial mat;
    mat.nu = kVacuumReluctivity;
    mat.conductor = true;
    mat.sigma_cu = MaterialCurve::copper_conductivity(rrr);
    mat.rho_cu = MaterialCurve::copper_resistivity(rrr);
    mat.lambda = MaterialCurve::wiedemann_franz_lambda(rrr, copper_fraction);
    mat.cv = MaterialCurve::default_wire_heat_capacity();
    mat.quench = quench;
    return mat;
}

RegionMaterial default_air_material() {
    RegionMaterial mat;
    mat.nu = kVacuumReluctivity;
    mat.conductor = false;
    return mat;
}

std::map<std::string, MaterialCurve> load_material_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open material file: " + path.string());

    std::map<std::string, MaterialCurve> out;
    std::string line;
    std::string name;
    std::vector<double> grid, values;
    int lineno = 0;
    const auto flush = [&]() {
        if (name.empty()) return;
        out.emplace(name, MaterialCurve::table(grid, values));
        name.clear();
        grid.clear();
        values.clear();
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first == "curve") {
            flush();
            if (!(ss >> name))
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                         ": curve needs a name");
        } else if (first == "end") {
            flush();
        } else {
            double theta = 0.0, value = 0.0;
            std::istringstream pair(line);
            if (name.empty() || !(pair >> theta >> value))
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                         ": expected `theta value` inside a curve block");
            grid.push_back(theta);
            values.push_back(value);
        }
    }
    flush();
    return out;
}

void apply_material_overrides(RegionMaterial& mat,
                              const std::map<std::string, MaterialCurve>& curves) {
    const auto set = [&](const char* key, std::optional<MaterialCurve>& slot) {
        const auto it = curves.find(key);
        if (it != curves.end()) slot = it->second;
    };
    set("sigma_cu", mat.sigma_cu);
    set("rho_cu", mat.rho_cu);
    set("lambda", mat.lambda);
    set("cv", mat.cv);
}

}  // namespace q3d
