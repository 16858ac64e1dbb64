#pragma once

#include <string>

#include "siegel/curves.hpp"

namespace siegel {

/// {"family": "...", "coefficients": [["re", "im"], ...], "label": "..."}.
/// Numbers may also be given as bare JSON numbers or single strings.
CurveSpec parse_curve_spec(const std::string& text);
CurveSpec read_curve_spec(const std::string& path);
std::string curve_spec_json(const CurveSpec& spec);

std::string read_text_file(const std::string& path);
/// Writes through a temporary file; throws Io.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace siegel
