#include "cinetrack/curve_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cinetrack {

ClosedQuadSpline::ClosedQuadSpline(std::vector<Vec2> control_points)
    : points_(std::move(control_points)) {
    if (points_.size() < 3) {
        throw std::domain_error("ClosedQuadSpline: need at least 3 control points, got " +
                                std::to_string(points_.size()));
    }
}

const Vec2& ClosedQuadSpline::operator[](std::ptrdiff_t i) const {
    const auto n = static_cast<std::ptrdiff_t>(points_.size());
    return points_[static_cast<std::size_t>(((i % n) + n) % n)];
}

double ClosedQuadSpline::signed_area() const {
    double twice = 0.0;
    const std::size_t n = points_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = points_[i];
        const Vec2& b = points_[(i + 1) % n];
        twice += a.x() * b.y() - b.x() * a.y();
    }
    return 0.5 * twice;
}

ClosedQuadSpline ClosedQuadSpline::normalized_winding() const {
    if (signed_area() >= 0.0) return *this;
    std::vector<Vec2> reversed(points_.rbegin(), points_.rend());
    return ClosedQuadSpline(std::move(reversed));
}

std::uint64_t binomial(int n, int i) {
    if (n < 0 || n > 20 || i < 0 || i > n) {
        throw std::domain_error("binomial: require 0 <= i <= n <= 20, got n=" + std::to_string(n) +
                                " i=" + std::to_string(i));
    }
    // Multiplicative form stays exact: each partial product is itself a binomial.
    const int k = std::min(i, n - i);
    std::uint64_t c = 1;
    for (int j = 1; j <= k; ++j) {
        c = c * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
    }
    return c;
}

double bernstein(int i, int d, double r) {
    if (i < 0 || i > d) {
        throw std::domain_error("bernstein: index " + std::to_string(i) + " outside [0, " +
                                std::to_string(d) + "]");
    }
    return static_cast<double>(binomial(d, i)) * std::pow(1.0 - r, d - i) * std::pow(r, i);
}

Vec2 evaluate_segment(const BezierSegment& seg, double r, int order) {
    const double s = 1.0 - r;
    switch (order) {
        case 0:
            return s * s * seg.x0 + 2.0 * r * s * seg.x1 + r * r * seg.x2;
        case 1:
            return 2.0 * s * (seg.x1 - seg.x0) + 2.0 * r * (seg.x2 - seg.x1);
        case 2:
            return 2.0 * (seg.x0 - 2.0 * seg.x1 + seg.x2);
        default:
            throw std::domain_error("evaluate_segment: order must be 0, 1 or 2");
    }
}

std::array<double, 3> segment_point_weights(double r) {
    const double s = 1.0 - r;
    const double a = 0.5 * s * s;
    const double c = 0.5 * r * r;
    return {a, a + 2.0 * r * s + c, c};
}

BezierSegment segment(const ClosedQuadSpline& spline, std::size_t p) {
    const auto i = static_cast<std::ptrdiff_t>(p);
    const Vec2& prev = spline[i - 1];
    const Vec2& cur = spline[i];
    const Vec2& next = spline[i + 1];
    return {0.5 * (prev + cur), cur, 0.5 * (cur + next)};
}

std::vector<BezierSegment> segments(const ClosedQuadSpline& spline) {
    std::vector<BezierSegment> out;
    out.reserve(spline.size());
    for (std::size_t p = 0; p < spline.size(); ++p) out.push_back(segment(spline, p));
    return out;
}

ClosedQuadSpline subdivide(const ClosedQuadSpline& spline) {
    const std::size_t n = spline.size();
    std::vector<Vec2> refined;
    refined.reserve(2 * n);
    for (std::size_t p = 0; p < n; ++p) {
        const Vec2& a = spline.control_points()[p];
        const Vec2& b = spline.control_points()[(p + 1) % n];
        refined.push_back(0.75 * a + 0.25 * b);
        refined.push_back(0.25 * a + 0.75 * b);
    }
    return ClosedQuadSpline(std::move(refined));
}

std::vector<CurveSample> sample(const ClosedQuadSpline& spline, int samples_per_segment,
                                std::size_t frame_index) {
    if (samples_per_segment < 1) throw std::domain_error("sample: samples_per_segment must be >= 1");
    std::vector<CurveSample> out;
    out.reserve(spline.size() * static_cast<std::size_t>(samples_per_segment));
    for (std::size_t p = 0; p < spline.size(); ++p) {
        const BezierSegment seg = segment(spline, p);
        for (int k = 0; k < samples_per_segment; ++k) {
            const double r = static_cast<double>(k) / samples_per_segment;
            out.push_back({frame_index, p, r, evaluate_segment(seg, r, 0)});
        }
    }
    return out;
}

double arc_length(const ClosedQuadSpline& spline, int points_per_segment) {
    if (points_per_segment < 2) throw std::domain_error("arc_length: points_per_segment must be >= 2");
    double length = 0.0;
    for (std::size_t p = 0; p < spline.size(); ++p) {
        const BezierSegment seg = segment(spline, p);
        Vec2 prev = seg.x0;
        for (int k = 1; k <= points_per_segment; ++k) {
            const Vec2 cur = k == points_per_segment
                                 ? seg.x2
                                 : evaluate_segment(seg, static_cast<double>(k) / points_per_segment, 0);
            length += (cur - prev).norm();
            prev = cur;
        }
    }
    return length;
}

ClosedQuadSpline fit_circle_template(std::span<const Vec2> points, int n_cp) {
    if (points.size() < 3) throw std::domain_error("fit_circle_template: need at least 3 points");
    if (n_cp < 3) throw std::domain_error("fit_circle_template: need at least 3 control points");

    Vec2 centroid = Vec2::Zero();
    for (const Vec2& q : points) centroid += q;
    centroid /= static_cast<double>(points.size());

    double radius = 0.0;
    for (const Vec2& q : points) radius += (q - centroid).norm();
    radius /= static_cast<double>(points.size());

    std::vector<Vec2> cps;
    cps.reserve(static_cast<std::size_t>(n_cp));
    for (int k = 0; k < n_cp; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n_cp;
        cps.emplace_back(centroid + radius * Vec2(std::cos(theta), std::sin(theta)));
    }
    return ClosedQuadSpline(std::move(cps)).normalized_winding();
}

}  // namespace cinetrack
