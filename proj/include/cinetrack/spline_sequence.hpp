#pragma once

#include "cinetrack/curve_model.hpp"

#include <stdexcept>
#include <vector>

namespace cinetrack {

/// One closed spline per frame, all with the same control-point count.
/// Control point j of frame t is parameter block (t * N + j); its x and y
/// components are optimization parameters 2 * (t * N + j) and 2 * (t * N + j) + 1.
class SplineSequence {
public:
    SplineSequence() = default;
    SplineSequence(std::size_t n_frames, std::size_t n_control_points, std::vector<Vec2> points)
        : frames_(n_frames), cps_(n_control_points), points_(std::move(points)) {
        if (n_control_points < 3) throw std::domain_error("SplineSequence: need at least 3 control points");
        if (points_.size() != frames_ * cps_) throw std::domain_error("SplineSequence: point count mismatch");
    }

    /// Same spline replicated across n_frames.
    static SplineSequence replicate(const ClosedQuadSpline& spline, std::size_t n_frames) {
        std::vector<Vec2> pts;
        pts.reserve(n_frames * spline.size());
        for (std::size_t t = 0; t < n_frames; ++t) {
            pts.insert(pts.end(), spline.control_points().begin(), spline.control_points().end());
        }
        return {n_frames, spline.size(), std::move(pts)};
    }

    static SplineSequence from_frames(const std::vector<ClosedQuadSpline>& frames) {
        if (frames.empty()) throw std::domain_error("SplineSequence: no frames");
        std::vector<Vec2> pts;
        for (const auto& f : frames) {
            if (f.size() != frames.front().size()) {
                throw std::domain_error("SplineSequence: frames differ in control-point count");
            }
            pts.insert(pts.end(), f.control_points().begin(), f.control_points().end());
        }
        return {frames.size(), frames.front().size(), std::move(pts)};
    }

    std::size_t n_frames() const { return frames_; }
    std::size_t n_control_points() const { return cps_; }
    std::size_t n_parameters() const { return 2 * points_.size(); }

    const Vec2& at(std::size_t t, std::size_t j) const { return points_[t * cps_ + j]; }
    Vec2& at(std::size_t t, std::size_t j) { return points_[t * cps_ + j]; }
    const std::vector<Vec2>& points() const { return points_; }

    ClosedQuadSpline frame(std::size_t t) const {
        return ClosedQuadSpline(std::vector<Vec2>(points_.begin() + static_cast<std::ptrdiff_t>(t * cps_),
                                                  points_.begin() + static_cast<std::ptrdiff_t>((t + 1) * cps_)));
    }

    Eigen::VectorXd parameters() const {
        Eigen::VectorXd x(static_cast<Eigen::Index>(n_parameters()));
        for (std::size_t i = 0; i < points_.size(); ++i) {
            x[static_cast<Eigen::Index>(2 * i)] = points_[i].x();
            x[static_cast<Eigen::Index>(2 * i + 1)] = points_[i].y();
        }
        return x;
    }

    void set_parameters(const Eigen::VectorXd& x) {
        if (static_cast<std::size_t>(x.size()) != n_parameters()) {
            throw std::domain_error("SplineSequence: parameter vector size mismatch");
        }
        for (std::size_t i = 0; i < points_.size(); ++i) {
            points_[i] = {x[static_cast<Eigen::Index>(2 * i)], x[static_cast<Eigen::Index>(2 * i + 1)]};
        }
    }

    /// Applies displacements to every control point.
    SplineSequence displaced(const Eigen::VectorXd& delta) const {
        SplineSequence out = *this;
        out.set_parameters(parameters() + delta);
        return out;
    }

private:
    std::size_t frames_ = 0;
    std::size_t cps_ = 0;
    std::vector<Vec2> points_;
};

}  // namespace cinetrack
