#pragma once

#include <filesystem>
#include <string>

#include "stvgkit/metrics.hpp"

namespace stvg {

// Machine-readable JSON document with means, thresholded fractions, match
// counts, and the per-video breakdown.
std::string report_to_json(const MetricReport& report);

void write_report(const MetricReport& report, const std::filesystem::path& path);

// One-row table: label | vIoU | tIoU | vIoU@R per threshold, plus match
// counts underneath.
std::string format_report_table(const MetricReport& report, const std::string& label);

}  // namespace stvg
