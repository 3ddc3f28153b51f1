#include "q3d/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace q3d {

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string csv_row(const StepRecord& rec) {
    return format_double(rec.t) + "," + format_double(rec.e_mag) + "," +
           format_double(rec.e_th) + "," + std::to_string(rec.picard_iters) + "," +
           format_double(rec.front_lo) + "," + format_double(rec.front_hi);
}

std::string csv_string(const std::vector<StepRecord>& records) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& rec : records) out += csv_row(rec) + "\n";
    return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open CSV output: " + path.string());
    out_ << kCsvHeader << "\n";
    out_.flush();
}

void CsvWriter::write(const StepRecord& rec) {
    out_ << csv_row(rec) << "\n";
    out_.flush();
    if (!out_) throw std::runtime_error("CSV write failed");
}

}  // namespace q3d
