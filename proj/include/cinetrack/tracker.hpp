#pragma once

#include "cinetrack/boundary.hpp"
#include "cinetrack/lm.hpp"
#include "cinetrack/residuals.hpp"
#include "cinetrack/spline_sequence.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cinetrack {

/// Diagnostics for one resolution level.
struct PassReport {
    std::size_t n_control_points = 0;
    int outer_iterations = 0;
    int lm_iterations = 0;
    bool converged = true;
    TermCosts final_costs;
    /// Weighted cost after each accepted LM step, one list per inner solve;
    /// the first entry of every list is the cost before the solve.
    std::vector<std::vector<double>> accepted_costs;
};

struct TrackResult {
    SplineSequence splines;
    std::vector<PassReport> passes;

    bool converged() const;
};

/// One resolution level: alternate nearest-candidate correspondence refresh
/// with a Levenberg-Marquardt solve at fixed correspondences.
SplineSequence solve_pass(const SplineSequence& state, std::span<const BoundaryCandidateSet> candidates,
                          const TrackerConfig& cfg, PassReport* report = nullptr);

/// Full multi-pass tracking from a frame-0 circle template with
/// cfg.initial_control_points control points, subdividing between passes.
/// Throws std::domain_error for fewer than 2 frames.
TrackResult track_sequence(std::span<const BoundaryCandidateSet> candidates, const TrackerConfig& cfg);

/// Same schedule from an explicit template replicated to every frame.
TrackResult track_sequence(std::span<const BoundaryCandidateSet> candidates, const ClosedQuadSpline& initial,
                           const TrackerConfig& cfg);

struct JacobianCheckOptions {
    double step = 1e-6;
    double perturbation_px = 0.5;
    /// Columns checked; 0 means all of them.
    std::size_t max_columns = 0;
    /// Adds this to one analytic entry (negative control for the checker).
    double corrupt_entry = 0.0;
};

struct JacobianCheckResult {
    double max_relative_error = 0.0;
    double max_cf = 0.0;
    double max_ac = 0.0;
    double max_cv = 0.0;
    std::size_t entries_checked = 0;
};

/// Compares the analytic Jacobian with central differences of the residual
/// function (evaluated in long double) at a seeded random perturbation of
/// `state`, with correspondences snapshotted before perturbing. Relative
/// error uses max(1, |analytic|) as denominator.
JacobianCheckResult jacobian_check(const SplineSequence& state, std::span<const BoundaryCandidateSet> candidates,
                                   const TrackerConfig& cfg, std::uint64_t seed,
                                   const JacobianCheckOptions& options = {});

}  // namespace cinetrack
