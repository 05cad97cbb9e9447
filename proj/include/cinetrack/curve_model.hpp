#pragma once

// Closed uniform quadratic B-splines and their quadratic Bezier pieces.
//
// A closed spline with control points P_0..P_{N-1} (cyclic) is the union of N
// quadratic Bezier segments. Segment p has
//   x0 = (P_{p-1} + P_p) / 2,  x1 = P_p,  x2 = (P_p + P_{p+1}) / 2
// so neighbouring segments share endpoints and the curve is C1 everywhere.

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace cinetrack {

using Vec2 = Eigen::Vector2d;

struct BezierSegment {
    Vec2 x0;
    Vec2 x1;
    Vec2 x2;
};

/// Closed quadratic spline, counterclockwise after normalization.
class ClosedQuadSpline {
public:
    ClosedQuadSpline() = default;

    /// Throws std::domain_error if fewer than 3 points are given.
    explicit ClosedQuadSpline(std::vector<Vec2> control_points);

    std::size_t size() const { return points_.size(); }
    const std::vector<Vec2>& control_points() const { return points_; }

    /// Cyclic access.
    const Vec2& operator[](std::ptrdiff_t i) const;

    /// Shoelace area of the control polygon in pixel coordinates. Positive is
    /// what this library calls counterclockwise (increasing angle atan2(y, x)).
    double signed_area() const;

    /// Returns a copy with reversed traversal if the polygon winds clockwise.
    ClosedQuadSpline normalized_winding() const;

private:
    std::vector<Vec2> points_;
};

struct CurveSample {
    std::size_t frame_index = 0;
    std::size_t patch_index = 0;
    double r = 0.0;
    Vec2 position = Vec2::Zero();
};

/// n choose i for n <= 20. Throws std::domain_error outside 0 <= i <= n <= 20.
std::uint64_t binomial(int n, int i);

/// C(d, i) (1 - r)^(d - i) r^i. Throws std::domain_error when i is not in [0, d].
double bernstein(int i, int d, double r);

/// Position (order 0), first derivative (order 1) or the constant second
/// derivative (order 2) of a quadratic Bezier segment at r.
Vec2 evaluate_segment(const BezierSegment& seg, double r, int order = 0);

/// Weights (w_prev, w_cur, w_next) such that segment p of a closed spline,
/// evaluated at r, equals w_prev P_{p-1} + w_cur P_p + w_next P_{p+1}.
std::array<double, 3> segment_point_weights(double r);

BezierSegment segment(const ClosedQuadSpline& spline, std::size_t p);
std::vector<BezierSegment> segments(const ClosedQuadSpline& spline);

/// Chaikin corner cutting; doubles the control points and reproduces the
/// same limit curve.
ClosedQuadSpline subdivide(const ClosedQuadSpline& spline);

/// N * S samples at r = k / S, k = 0..S-1 on every segment.
std::vector<CurveSample> sample(const ClosedQuadSpline& spline, int samples_per_segment,
                                std::size_t frame_index = 0);

/// Polyline length through points_per_segment + 1 uniform r values per segment.
double arc_length(const ClosedQuadSpline& spline, int points_per_segment = 64);

/// Circle template at the centroid of `points` with the mean centroid
/// distance as radius, n_cp control points, counterclockwise.
ClosedQuadSpline fit_circle_template(std::span<const Vec2> points, int n_cp);

}  // namespace cinetrack
