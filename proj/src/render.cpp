#include "cinetrack/render.hpp"

#include <array>
#include <cstdio>

namespace cinetrack {

namespace {

std::string fmt3(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::string curve_color(std::size_t index) {
    static constexpr std::array<const char*, 6> kPalette{"#e41a1c", "#377eb8", "#4daf4a",
                                                         "#984ea3", "#ff7f00", "#a65628"};
    return kPalette[index % kPalette.size()];
}

std::string svg_path_data(const ClosedQuadSpline& spline, int points_per_segment) {
    std::string d;
    bool first = true;
    for (const CurveSample& s : sample(spline, points_per_segment)) {
        d += first ? "M " : " L ";
        d += fmt3(s.position.x()) + " " + fmt3(s.position.y());
        first = false;
    }
    d += " Z";
    return d;
}

std::string render_frame_svg(int width, int height, std::span<const Vec2> candidates,
                             std::span<const SvgCurve> curves) {
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
                      "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " +
                      std::to_string(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"black\"/>\n";
    svg += "<g fill=\"#bbbbbb\">\n";
    for (const Vec2& p : candidates) {
        svg += "<circle cx=\"" + fmt3(p.x()) + "\" cy=\"" + fmt3(p.y()) + "\" r=\"0.3\"/>\n";
    }
    svg += "</g>\n";
    for (const SvgCurve& c : curves) {
        svg += "<path fill=\"none\" stroke=\"" + c.color + "\" stroke-width=\"0.4\" d=\"" + svg_path_data(c.spline) +
               "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace cinetrack
