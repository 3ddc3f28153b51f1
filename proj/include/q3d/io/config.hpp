#pragma once

#include "q3d/model/wire_benchmark.hpp"
#include "q3d/solver/transient.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <filesystem>
#include <string>

namespace q3d {

struct OutputConfig {
    std::string dir = "out";
    std::string csv = "energies.csv";
    int vtk_every = 0;  // 0 = no field snapshots
    std::array<int, 3> vtk_dims = {5, 5, 41};
};

/// Full run configuration; every field has a default matching the wire
/// benchmark, and parsing validates strictly (unknown keys are errors).
struct RunConfig {
    WireModelParams model;
    TransientConfig transient;
    std::filesystem::path cache_dir;  // empty: $Q3D_CACHE_DIR or ".q3d-cache"
    int tensor_pmax = 8;
    int tensor_mmax = 16;
    OutputConfig output;

    void validate() const;
    std::filesystem::path resolved_cache_dir() const;
};

RunConfig parse_run_config(const nlohmann::json& j);
nlohmann::json run_config_to_json(const RunConfig& config);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace q3d
