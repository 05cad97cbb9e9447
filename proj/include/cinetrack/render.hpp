#pragma once

#include "cinetrack/curve_model.hpp"

#include <span>
#include <string>
#include <vector>

namespace cinetrack {

struct SvgCurve {
    ClosedQuadSpline spline;
    std::string color;
};

/// Stroke colour for the i-th curves file.
std::string curve_color(std::size_t index);

/// Closed path "M ... L ... Z" through `points_per_segment` uniform samples
/// of every segment.
std::string svg_path_data(const ClosedQuadSpline& spline, int points_per_segment = 16);

/// One overlay image: candidate points as dots, curves as closed paths.
/// Coordinates are written with 3 decimals so output is byte-stable.
std::string render_frame_svg(int width, int height, std::span<const Vec2> candidates,
                             std::span<const SvgCurve> curves);

}  // namespace cinetrack
