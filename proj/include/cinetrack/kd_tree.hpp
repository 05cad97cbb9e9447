#pragma once

#include "cinetrack/curve_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cinetrack {

/// Static 2D Kd-tree with axis-alternating median splits.
///
/// nearest() returns the point minimizing squared Euclidean distance; exact
/// ties go to the smaller (y, x) pair, i.e. smallest row then column for
/// pixel-centre points. The result is therefore identical to a linear scan
/// with the same rule.
class KdTree2 {
public:
    KdTree2() = default;
    explicit KdTree2(std::vector<Vec2> points);

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const std::vector<Vec2>& points() const { return points_; }

    /// Depth of the deepest leaf; 0 for a single point.
    int depth() const;

    /// Index into points() of the nearest point. Precondition: !empty().
    std::size_t nearest_index(const Vec2& query) const;
    const Vec2& nearest(const Vec2& query) const { return points_[nearest_index(query)]; }

private:
    struct Node {
        std::int32_t point = -1;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::uint8_t axis = 0;
    };

    std::int32_t build(std::span<std::int32_t> ids, int depth);
    void search(std::int32_t node, const Vec2& q, std::int32_t& best, double& best_d2) const;
    int depth_of(std::int32_t node) const;

    std::vector<Vec2> points_;
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

/// (y, x) lexicographic order used for nearest-neighbour tie-breaking.
inline bool row_major_less(const Vec2& a, const Vec2& b) {
    return a.y() < b.y() || (a.y() == b.y() && a.x() < b.x());
}

/// Reference linear scan with the same distance and tie-break rule as KdTree2.
std::size_t nearest_index_linear(std::span<const Vec2> points, const Vec2& query);

}  // namespace cinetrack
