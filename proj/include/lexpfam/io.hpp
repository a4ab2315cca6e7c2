#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lexpfam/solver.hpp"

namespace lexpfam::io {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "0.1.0";

/// %.17g formatting, round-trip exact for doubles.
std::string format_double(double x);

/// Write a CSV with a header row; numbers at 17 significant digits.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<Vec>& rows);

/// Read a CSV written by write_csv. Throws ParseError naming the offending
/// line; expected_cols < 0 accepts any consistent column count.
struct CsvData {
    std::vector<std::string> header;
    std::vector<Vec> rows;
};
CsvData read_csv(const std::string& path, int expected_cols = -1);

nlohmann::json trace_to_json(const SolverTrace& trace);
SolverTrace trace_from_json(const nlohmann::json& j);

SolverTrace load_trace(const std::string& path);
void save_trace(const std::string& path, const SolverTrace& trace);

void save_json(const std::string& path, const nlohmann::json& j);
nlohmann::json load_json(const std::string& path);

}  // namespace lexpfam::io
