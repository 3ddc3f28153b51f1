#include "q3d/io/config.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>

namespace q3d {

namespace {

using nlohmann::json;

/// Strict field reader: flags unknown keys so typos never silently fall back
/// to defaults.
class Section {
public:
    Section(json j, std::string name) : j_(std::move(j)), name_(std::move(name)) {
        if (!j_.is_object()) throw std::invalid_argument("config: " + name_ + " must be an object");
    }

    template <class T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        if (j_.contains(key)) {
            try {
                out = j_.at(key).get<T>();
            } catch (const json::exception&) {
                throw std::invalid_argument("config: bad value for " + name_ + "." + key);
            }
        }
    }

    json sub(const char* key) {
        seen_.insert(key);
        return j_.contains(key) ? j_.at(key) : json::object();
    }

    void finish() const {
        for (const auto& [key, value] : j_.items())
            if (!seen_.count(key))
                throw std::invalid_argument("config: unknown key " + name_ + "." + key);
    }

private:
    json j_;
    std::string name_;
    std::set<std::string> seen_;
};

}  // namespace

void RunConfig::validate() const {
    if (!(model.wire_lx > 0) || !(model.wire_ly > 0) || !(model.length > 0))
        throw std::invalid_argument("config: geometry lengths must be positive");
    if (model.air_scale <= 1.0)
        throw std::invalid_argument("config: air_scale must exceed 1 (air box around the wire)");
    if (model.wire_nx < 1 || model.wire_ny < 1 || model.air_nx < 1 || model.air_ny < 1)
        throw std::invalid_argument("config: mesh divisions must be >= 1");
    if (model.se_elements < 1 || model.se_order < 1)
        throw std::invalid_argument("config: need se_elements >= 1 and se_order >= 1");
    if (model.se_order > tensor_pmax)
        throw std::invalid_argument("config: se_order exceeds tensor_cache.pmax");
    if (transient.material_cheb_order > tensor_mmax)
        throw std::invalid_argument("config: material_cheb_order exceeds tensor_cache.mmax");
    model.quench.validate();
    transient.validate();
    if (output.vtk_every < 0) throw std::invalid_argument("config: vtk_every must be >= 0");
    for (int d : output.vtk_dims)
        if (d < 2) throw std::invalid_argument("config: vtk_dims entries must be >= 2");
}

std::filesystem::path RunConfig::resolved_cache_dir() const {
    if (!cache_dir.empty()) return cache_dir;
    if (const char* env = std::getenv("Q3D_CACHE_DIR")) return env;
    return ".q3d-cache";
}

RunConfig parse_run_config(const json& j) {
    RunConfig cfg;
    Section root(j, "config");

    {
        Section s(root.sub("geometry"), "geometry");
        s.get("wire_lx_m", cfg.model.wire_lx);
        s.get("wire_ly_m", cfg.model.wire_ly);
        s.get("length_m", cfg.model.length);
        s.get("air_scale", cfg.model.air_scale);
        s.finish();
    }
    {
        Section s(root.sub("discretization"), "discretization");
        s.get("wire_nx", cfg.model.wire_nx);
        s.get("wire_ny", cfg.model.wire_ny);
        s.get("air_nx", cfg.model.air_nx);
        s.get("air_ny", cfg.model.air_ny);
        s.get("se_elements", cfg.model.se_elements);
        s.get("se_order", cfg.model.se_order);
        s.finish();
    }
    {
        Section s(root.sub("materials"), "materials");
        s.get("rrr", cfg.model.rrr);
        s.get("copper_fraction", cfg.model.copper_fraction);
        std::string file;
        s.get("file", file);
        if (!file.empty()) cfg.model.materials_file = file;
        {
            Section q(s.sub("quench"), "materials.quench");
            q.get("theta_cs_K", cfg.model.quench.theta_cs);
            q.get("theta_crit_K", cfg.model.quench.theta_crit);
            q.get("tau_sc_s", cfg.model.quench.tau_sc);
            q.finish();
        }
        s.finish();
    }
    {
        Section s(root.sub("source"), "source");
        double j_eng_mm2 = cfg.model.engineering_current_density / 1e6;
        s.get("engineering_current_density_A_per_mm2", j_eng_mm2);
        cfg.model.engineering_current_density = j_eng_mm2 * 1e6;
        s.finish();
    }
    {
        Section s(root.sub("initial"), "initial");
        s.get("bath_K", cfg.model.bath_temperature);
        s.get("peak_K", cfg.model.peak_temperature);
        s.get("bump_width_fraction", cfg.model.bump_width_fraction);
        s.finish();
    }
    {
        Section s(root.sub("transient"), "transient");
        s.get("t_end_s", cfg.transient.t_end);
        s.get("steps", cfg.transient.steps);
        s.get("picard_tol", cfg.transient.picard_tol);
        s.get("picard_max_iters", cfg.transient.picard_max_iters);
        s.get("regularization_scale", cfg.transient.regularization_scale);
        s.get("material_cheb_order", cfg.transient.material_cheb_order);
        std::string path = cfg.transient.loss_path == LossPath::Separable ? "separable" : "joint";
        s.get("loss_path", path);
        if (path == "joint")
            cfg.transient.loss_path = LossPath::JointQuadrature;
        else if (path == "separable")
            cfg.transient.loss_path = LossPath::Separable;
        else
            throw std::invalid_argument("config: loss_path must be joint or separable");
        s.get("adapt", cfg.transient.adapt);
        s.get("adapt_threshold", cfg.transient.adapt_threshold);
        s.get("min_element_fraction", cfg.transient.min_element_fraction);
        s.get("allow_substeps", cfg.transient.allow_substeps);
        s.finish();
    }
    {
        Section s(root.sub("tensor_cache"), "tensor_cache");
        std::string dir = cfg.cache_dir.string();
        s.get("dir", dir);
        cfg.cache_dir = dir;
        s.get("pmax", cfg.tensor_pmax);
        s.get("mmax", cfg.tensor_mmax);
        s.finish();
    }
    {
        Section s(root.sub("output"), "output");
        s.get("dir", cfg.output.dir);
        s.get("csv", cfg.output.csv);
        s.get("vtk_every", cfg.output.vtk_every);
        s.get("vtk_dims", cfg.output.vtk_dims);
        s.finish();
    }
    root.finish();

    cfg.validate();
    return cfg;
}

json run_config_to_json(const RunConfig& cfg) {
    json j;
    j["geometry"] = {{"wire_lx_m", cfg.model.wire_lx},
                     {"wire_ly_m", cfg.model.wire_ly},
                     {"length_m", cfg.model.length},
                     {"air_scale", cfg.model.air_scale}};
    j["discretization"] = {{"wire_nx", cfg.model.wire_nx},   {"wire_ny", cfg.model.wire_ny},
                           {"air_nx", cfg.model.air_nx},     {"air_ny", cfg.model.air_ny},
                           {"se_elements", cfg.model.se_elements},
                           {"se_order", cfg.model.se_order}};
    j["materials"] = {{"rrr", cfg.model.rrr},
                      {"copper_fraction", cfg.model.copper_fraction},
                      {"file", cfg.model.materials_file ? cfg.model.materials_file->string() : ""},
                      {"quench",
                       {{"theta_cs_K", cfg.model.quench.theta_cs},
                        {"theta_crit_K", cfg.model.quench.theta_crit},
                        {"tau_sc_s", cfg.model.quench.tau_sc}}}};
    j["source"] = {{"engineering_current_density_A_per_mm2",
                    cfg.model.engineering_current_density / 1e6}};
    j["initial"] = {{"bath_K", cfg.model.bath_temperature},
                    {"peak_K", cfg.model.peak_temperature},
                    {"bump_width_fraction", cfg.model.bump_width_fraction}};
    j["transient"] = {
        {"t_end_s", cfg.transient.t_end},
        {"steps", cfg.transient.steps},
        {"picard_tol", cfg.transient.picard_tol},
        {"picard_max_iters", cfg.transient.picard_max_iters},
        {"regularization_scale", cfg.transient.regularization_scale},
        {"material_cheb_order", cfg.transient.material_cheb_order},
        {"loss_path", cfg.transient.loss_path == LossPath::Separable ? "separable" : "joint"},
        {"adapt", cfg.transient.adapt},
        {"adapt_threshold", cfg.transient.adapt_threshold},
        {"min_element_fraction", cfg.transient.min_element_fraction},
        {"allow_substeps", cfg.transient.allow_substeps}};
    j["tensor_cache"] = {{"dir", cfg.cache_dir.string()},
                         {"pmax", cfg.tensor_pmax},
                         {"mmax", cfg.tensor_mmax}};
    j["output"] = {{"dir", cfg.output.dir},
                   {"csv", cfg.output.csv},
                   {"vtk_every", cfg.output.vtk_every},
                   {"vtk_dims", cfg.output.vtk_dims}};
    return j;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("config parse error in " + path.string() + ": " + e.what());
    }
    return parse_run_config(j);
}

}  // namespace q3d
