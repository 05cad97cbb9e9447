#include "cinetrack/kd_tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cinetrack {

namespace {

double squared_distance(const Vec2& a, const Vec2& b) {
    const double dx = a.x() - b.x();
    const double dy = a.y() - b.y();
    return dx * dx + dy * dy;
}

// Duplicate coordinates fall back to the lower input index.
bool closer(std::span<const Vec2> pts, std::size_t cand, double cand_d2, std::size_t best, double best_d2) {
    if (cand_d2 != best_d2) return cand_d2 < best_d2;
    if (row_major_less(pts[cand], pts[best])) return true;
    if (row_major_less(pts[best], pts[cand])) return false;
    return cand < best;
}

}  // namespace

KdTree2::KdTree2(std::vector<Vec2> points) : points_(std::move(points)) {
    if (points_.empty()) return;
    if (points_.size() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
        throw std::length_error("KdTree2: too many points");
    }
    std::vector<std::int32_t> ids(points_.size());
    std::iota(ids.begin(), ids.end(), 0);
    nodes_.reserve(points_.size());
    root_ = build(ids, 0);
}

std::int32_t KdTree2::build(std::span<std::int32_t> ids, int depth) {
    if (ids.empty()) return -1;
    const int axis = depth % 2;
    const int other = 1 - axis;
    const auto mid = ids.size() / 2;
    // Full key (axis, other axis, id) makes the split independent of the
    // nth_element implementation.
    std::nth_element(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(mid), ids.end(),
                     [&](std::int32_t a, std::int32_t b) {
                         const Vec2& pa = points_[static_cast<std::size_t>(a)];
                         const Vec2& pb = points_[static_cast<std::size_t>(b)];
                         if (pa[axis] != pb[axis]) return pa[axis] < pb[axis];
                         if (pa[other] != pb[other]) return pa[other] < pb[other];
                         return a < b;
                     });

    const auto self = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back({ids[mid], -1, -1, static_cast<std::uint8_t>(axis)});
    const std::int32_t left = build(ids.first(mid), depth + 1);
    const std::int32_t right = build(ids.subspan(mid + 1), depth + 1);
    nodes_[static_cast<std::size_t>(self)].left = left;
    nodes_[static_cast<std::size_t>(self)].right = right;
    return self;
}

int KdTree2::depth() const { return root_ < 0 ? -1 : depth_of(root_); }

int KdTree2::depth_of(std::int32_t node) const {
    const Node& n = nodes_[static_cast<std::size_t>(node)];
    int d = 0;
    if (n.left >= 0) d = std::max(d, 1 + depth_of(n.left));
    if (n.right >= 0) d = std::max(d, 1 + depth_of(n.right));
    return d;
}

std::size_t KdTree2::nearest_index(const Vec2& query) const {
    if (root_ < 0) throw std::domain_error("KdTree2::nearest on empty tree");
    std::int32_t best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    search(root_, query, best, best_d2);
    return static_cast<std::size_t>(best);
}

void KdTree2::search(std::int32_t node, const Vec2& q, std::int32_t& best, double& best_d2) const {
    const Node& n = nodes_[static_cast<std::size_t>(node)];
    const Vec2& p = points_[static_cast<std::size_t>(n.point)];

    const double d2 = squared_distance(p, q);
    if (best < 0 || closer(points_, static_cast<std::size_t>(n.point), d2, static_cast<std::size_t>(best), best_d2)) {
        best = n.point;
        best_d2 = d2;
    }

    const double diff = q[n.axis] - p[n.axis];
    const std::int32_t near_side = diff < 0.0 ? n.left : n.right;
    const std::int32_t far_side = diff < 0.0 ? n.right : n.left;
    if (near_side >= 0) search(near_side, q, best, best_d2);
    // Equality still descends: an equidistant point may win the tie-break.
    if (far_side >= 0 && diff * diff <= best_d2) search(far_side, q, best, best_d2);
}

std::size_t nearest_index_linear(std::span<const Vec2> points, const Vec2& query) {
    if (points.empty()) throw std::domain_error("nearest_index_linear: empty point set");
    std::size_t best = 0;
    double best_d2 = squared_distance(points[0], query);
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double d2 = squared_distance(points[i], query);
        if (closer(points, i, d2, best, best_d2)) {
            best = i;
            best_d2 = d2;
        }
    }
    return best;
}

}  // namespace cinetrack
