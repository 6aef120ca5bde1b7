#pragma once

#include <filesystem>
#include <string>

#include "cped/bench.hpp"

namespace cped {

struct ChartSpec {
    std::string title;
    // Normalized charts use a fixed [0, 1] y-range; otherwise the range is
    // derived from the data (for raw-variance curves).
    bool normalized = true;
};

// Header `gamma_prime,param,method,mean_hpi,stderr_hpi,n_seeds`; rows sorted
// by (method, param, gamma_prime); reals printed with 10 significant digits.
// Throws DataError on an empty result or I/O failure.
void write_csv(const SweepResult& result, const std::filesystem::path& path);
std::string csv_string(const SweepResult& result);

// Parses a file produced by write_csv.
SweepResult read_csv(const std::filesystem::path& path);
SweepResult parse_csv(const std::string& text);

// Replaces every real by the value obtained after printing it at CSV
// precision, so charts rendered from memory match charts rendered from a
// written CSV byte for byte.
SweepResult round_to_emitted_precision(const SweepResult& result);

// Standalone SVG 1.1, fixed 900x500 viewbox: one polyline per (param,
// method) series, translucent standard-error band, legend, axis ticks.
// Output is deterministic for identical input.
std::string render_line_chart_string(const SweepResult& result, const ChartSpec& spec);
void render_line_chart(const SweepResult& result, const ChartSpec& spec,
                       const std::filesystem::path& path);

}  // namespace cped
