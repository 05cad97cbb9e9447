#pragma once

// Seeded random instances for the built-in consistency checks.

#include "cinetrack/boundary.hpp"
#include "cinetrack/residuals.hpp"
#include "cinetrack/spline_sequence.hpp"
#include "cinetrack/tracker.hpp"

#include <cstdint>
#include <vector>

namespace cinetrack {

struct RandomTrackingInstance {
    SplineSequence state;
    std::vector<BoundaryCandidateSet> candidates;
};

/// Noisy circles of varying radius as candidates, and a jittered circle
/// template as state.
RandomTrackingInstance make_random_tracking_instance(std::uint64_t seed, std::size_t frames = 4,
                                                     std::size_t control_points = 8);

struct KdOracleResult {
    std::size_t queries = 0;
    std::size_t mismatches = 0;
};

/// Kd-tree versus linear scan on `points` random points and `queries` random
/// queries. Half of the points sit on a half-integer grid so exact distance
/// ties occur.
KdOracleResult kd_tree_oracle(std::uint64_t seed, std::size_t points = 1000, std::size_t queries = 1000);

}  // namespace cinetrack
