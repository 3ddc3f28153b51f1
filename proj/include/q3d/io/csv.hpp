#pragma once

#include "q3d/solver/transient.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace q3d {

/// Fixed energy-series schema; rows use shortest-round-trip formatting with
/// a locale-independent decimal point.
inline constexpr const char* kCsvHeader = "t_s,E_mag_J,E_th_J,picard_iters,front_lo_m,front_hi_m";

std::string csv_row(const StepRecord& rec);
std::string csv_string(const std::vector<StepRecord>& records);

/// Streaming writer flushing after every row, so partial runs keep their
/// completed steps.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);
    void write(const StepRecord& rec);

private:
    std::ofstream out_;
};

}  // namespace q3d
