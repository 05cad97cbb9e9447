#include "cinetrack/self_check.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace cinetrack {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

RandomTrackingInstance make_random_tracking_instance(std::uint64_t seed, std::size_t frames,
                                                     std::size_t control_points) {
    std::mt19937_64 rng(seed);
    const Vec2 center(uniform(rng, 40.0, 80.0), uniform(rng, 40.0, 80.0));
    const double base_radius = uniform(rng, 12.0, 25.0);

    std::vector<BoundaryCandidateSet> candidates;
    for (std::size_t t = 0; t < frames; ++t) {
        const double radius = base_radius * uniform(rng, 0.8, 1.0);
        std::vector<Vec2> pts;
        const int n = 60 + static_cast<int>(rng() % 60);
        for (int i = 0; i < n; ++i) {
            const double theta = 2.0 * std::numbers::pi * i / n;
            const double rr = radius + uniform(rng, -0.7, 0.7);
            pts.emplace_back(center + rr * Vec2(std::cos(theta), std::sin(theta)));
        }
        candidates.emplace_back(std::move(pts), t);
    }

    const ClosedQuadSpline tmpl = fit_circle_template(candidates.front().points(), static_cast<int>(control_points));
    SplineSequence state = SplineSequence::replicate(tmpl, frames);
    for (std::size_t t = 0; t < frames; ++t) {
        for (std::size_t j = 0; j < control_points; ++j) {
            state.at(t, j) += Vec2(uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5));
        }
    }
    return {std::move(state), std::move(candidates)};
}

KdOracleResult kd_tree_oracle(std::uint64_t seed, std::size_t points, std::size_t queries) {
    std::mt19937_64 rng(seed);
    std::vector<Vec2> pts;
    pts.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        if (i % 2 == 0) {
            pts.emplace_back(uniform(rng, 0.0, 128.0), uniform(rng, 0.0, 128.0));
        } else {
            // Distinct half-integer grid points.
            const auto cell = static_cast<int>(rng() % (128 * 128));
            pts.emplace_back(cell % 128 + 0.5, cell / 128 + 0.5);
        }
    }
    // Duplicates are removed so "nearest point" is a well-defined coordinate pair.
    std::sort(pts.begin(), pts.end(), row_major_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::shuffle(pts.begin(), pts.end(), rng);

    const KdTree2 tree(pts);
    KdOracleResult result;
    for (std::size_t q = 0; q < queries; ++q) {
        // Integer queries are equidistant from several grid points.
        const Vec2 query = q % 2 == 0 ? Vec2(uniform(rng, -5.0, 133.0), uniform(rng, -5.0, 133.0))
                                      : Vec2(static_cast<double>(rng() % 129), static_cast<double>(rng() % 129));
        ++result.queries;
        if (tree.nearest(query) != pts[nearest_index_linear(pts, query)]) ++result.mismatches;
    }
    return result;
}

}  // namespace cinetrack
