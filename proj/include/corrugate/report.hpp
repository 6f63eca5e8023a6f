#pragma once

#include <string>

#include "corrugate/cone.hpp"

namespace corrugate {

// Serialize a defect report to a JSON object with keys
//   N, eta, eps, grid (= [nx, ny]), max_e11, max_e12, max_e22,
//   c0_distance, min_immersion_margin
// Doubles survive a write/parse round trip bit-exactly.
std::string report_to_json(const DefectReport& report, int indent = 2);

// Parse a report produced by report_to_json. Throws IoError on malformed
// input or a missing/extra key.
DefectReport report_from_json(const std::string& text);

// Write report_to_json(report) to a file, trailing newline included.
// Throws IoError if the file cannot be written.
void write_report(const std::string& path, const DefectReport& report);

// Read and parse a report file. Throws IoError on I/O or parse failure.
DefectReport read_report(const std::string& path);

}  // namespace corrugate
