#pragma once

#include "cinetrack/boundary.hpp"
#include "cinetrack/spline_sequence.hpp"
#include "cinetrack/tracker.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace cinetrack {

/// Contents of curves.json.
struct CurvesDocument {
    Structure structure = Structure::LvEndo;
    SplineSequence splines;
    double pixel_spacing_x = 1.0;
    double pixel_spacing_y = 1.0;
    std::vector<PassReport> passes;
};

std::string curves_to_json(const CurvesDocument& doc);

/// Throws FormatError (with the parser's byte position) on malformed input.
CurvesDocument curves_from_json(const std::string& text);

void write_curves(const std::filesystem::path& path, const CurvesDocument& doc);
CurvesDocument read_curves(const std::filesystem::path& path);

}  // namespace cinetrack
