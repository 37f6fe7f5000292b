#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tbsim/config.hpp"
#include "tbsim/pipeline.hpp"

namespace tbsim {

inline constexpr const char* kToolVersion = "0.1.0";

/// %.17g, enough to round-trip a double.
std::string format_double(double v);

/// Deterministic run report (no timing). `files` lists the artifacts written alongside it.
Json make_report(const RunConfig& cfg, const RunResult& result, const std::vector<std::string>& files);

/// Writes report.json, timing.json and the requested CSV / TBSM artifacts into `dir`.
/// Returns the file names written, report.json last.
std::vector<std::string> write_run_outputs(const RunConfig& cfg, const RunResult& result,
                                           const std::filesystem::path& dir);

/// Long-format kernel table: nu_s, nu_i, abs, arg.
void write_kernel_csv(const std::filesystem::path& path, const Matrix& kernel, const FrequencyGrid& grid,
                      const std::string& hash, const std::string& name);

void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace tbsim
