#pragma once

// Residuals of the joint all-frames registration problem.
//
// Three families, all componentwise (x row then y row):
//   cf  sqrt(rho_cf) * (u_{t,p,k} - phi(u_{t,p,k}))                 2 F N S rows
//   ac  sqrt(rho_ac) * (x_{t+2,j} - 2 x_{t+1,j} + x_{t,j}), t cyclic 2 F N rows
//   cv  sqrt(rho_cv) * d2B/dr2 of segment p in frame t               2 F N rows
// With the correspondences phi held fixed every residual is linear in the
// control points and touches exactly three of them.

#include "cinetrack/boundary.hpp"
#include "cinetrack/spline_sequence.hpp"

#include <Eigen/Sparse>

#include <cmath>
#include <span>
#include <vector>

namespace cinetrack {

struct TrackerConfig {
    double rho_cf = 10.0;
    double rho_ac = 1.0;
    double rho_cv = 0.1;
    int samples_per_segment = 8;
    int passes = 3;
    int initial_control_points = 8;
    int outer_iterations_per_pass = 10;
    double outer_tolerance_px = 0.05;
    int lm_max_iterations = 50;
    double lm_lambda_init = 1e-3;
    double lm_lambda_up = 10.0;
    double lm_lambda_down = 0.1;
    double lm_relative_cost_tol = 1e-6;

    /// Throws std::domain_error unless every field is positive.
    void validate() const;
};

/// Unweighted sums of squares of each residual family.
struct TermCosts {
    double cf = 0.0;
    double ac = 0.0;
    double cv = 0.0;

    double weighted(const TrackerConfig& cfg) const { return cfg.rho_cf * cf + cfg.rho_ac * ac + cfg.rho_cv * cv; }
};

/// Row layout of the stacked residual vector.
struct ResidualLayout {
    std::size_t frames = 0;
    std::size_t control_points = 0;
    std::size_t samples_per_segment = 0;

    std::size_t cf_rows() const { return 2 * frames * control_points * samples_per_segment; }
    std::size_t ac_rows() const { return 2 * frames * control_points; }
    std::size_t cv_rows() const { return 2 * frames * control_points; }
    std::size_t rows() const { return cf_rows() + ac_rows() + cv_rows(); }
    std::size_t cols() const { return 2 * frames * control_points; }

    std::size_t ac_offset() const { return cf_rows(); }
    std::size_t cv_offset() const { return cf_rows() + ac_rows(); }

    /// Number of fixed correspondence targets: one per curve sample.
    std::size_t samples() const { return frames * control_points * samples_per_segment; }
};

enum class ResidualFamily { Cf, Ac, Cv };

inline ResidualFamily family_of_row(const ResidualLayout& layout, std::size_t row) {
    if (row < layout.ac_offset()) return ResidualFamily::Cf;
    if (row < layout.cv_offset()) return ResidualFamily::Ac;
    return ResidualFamily::Cv;
}

struct ResidualSystem {
    ResidualLayout layout;
    /// Column count of the Jacobian (2 F N for assembled systems).
    std::size_t n_parameters = 0;
    Eigen::VectorXd residuals;
    std::vector<Eigen::Triplet<double>> jacobian;
    TermCosts term_costs;

    /// Sum of squared residuals, i.e. the rho-weighted total cost.
    double cost() const { return residuals.squaredNorm(); }

    Eigen::SparseMatrix<double> jacobian_matrix() const;
};

/// phi(u) for every curve sample of `state`, in cf-row order (t, p, k).
/// Throws std::domain_error if candidates do not cover every frame.
std::vector<Vec2> compute_correspondences(const SplineSequence& state,
                                          std::span<const BoundaryCandidateSet> candidates, int samples_per_segment);

/// Residual vector for parameters `params` (SplineSequence::parameters()
/// layout) and fixed correspondence targets.
///
/// Generic in the scalar type so that the finite-difference Jacobian check can
/// run in extended precision. Samples are evaluated through the Bezier form of
/// each segment rather than through the collapsed control-point weights used by
/// the analytic Jacobian.
template <class Scalar>
void evaluate_residuals(std::span<const Scalar> params, const ResidualLayout& layout, std::span<const Vec2> targets,
                        const TrackerConfig& cfg, std::span<Scalar> out) {
    using std::sqrt;
    const std::size_t F = layout.frames;
    const std::size_t N = layout.control_points;
    const std::size_t S = layout.samples_per_segment;
    const Scalar w_cf = sqrt(static_cast<Scalar>(cfg.rho_cf));
    const Scalar w_ac = sqrt(static_cast<Scalar>(cfg.rho_ac));
    const Scalar w_cv = sqrt(static_cast<Scalar>(cfg.rho_cv));
    const Scalar half = static_cast<Scalar>(0.5);
    const Scalar two = static_cast<Scalar>(2);

    auto coord = [&](std::size_t t, std::size_t j, std::size_t c) -> Scalar {
        return params[2 * (t * N + (j % N)) + c];
    };

    std::size_t row = 0;
    for (std::size_t t = 0; t < F; ++t) {
        for (std::size_t p = 0; p < N; ++p) {
            const std::size_t prev = (p + N - 1) % N;
            for (std::size_t k = 0; k < S; ++k) {
                const Scalar r = static_cast<Scalar>(k) / static_cast<Scalar>(S);
                const Scalar s = static_cast<Scalar>(1) - r;
                const Vec2& target = targets[(t * N + p) * S + k];
                for (std::size_t c = 0; c < 2; ++c) {
                    const Scalar x0 = half * (coord(t, prev, c) + coord(t, p, c));
                    const Scalar x1 = coord(t, p, c);
                    const Scalar x2 = half * (coord(t, p, c) + coord(t, p + 1, c));
                    const Scalar u = s * s * x0 + two * r * s * x1 + r * r * x2;
                    out[row++] = w_cf * (u - static_cast<Scalar>(target[static_cast<Eigen::Index>(c)]));
                }
            }
        }
    }
    for (std::size_t t = 0; t < F; ++t) {
        for (std::size_t j = 0; j < N; ++j) {
            for (std::size_t c = 0; c < 2; ++c) {
                out[row++] =
                    w_ac * (coord((t + 2) % F, j, c) - two * coord((t + 1) % F, j, c) + coord(t, j, c));
            }
        }
    }
    for (std::size_t t = 0; t < F; ++t) {
        for (std::size_t p = 0; p < N; ++p) {
            const std::size_t prev = (p + N - 1) % N;
            for (std::size_t c = 0; c < 2; ++c) {
                const Scalar x0 = half * (coord(t, prev, c) + coord(t, p, c));
                const Scalar x1 = coord(t, p, c);
                const Scalar x2 = half * (coord(t, p, c) + coord(t, p + 1, c));
                out[row++] = w_cv * two * (x0 - two * x1 + x2);
            }
        }
    }
}

/// Residuals plus the analytic sparse Jacobian for fixed targets.
ResidualSystem assemble(const SplineSequence& state, std::span<const Vec2> targets, const TrackerConfig& cfg);

/// Computes correspondences from `candidates`, then assembles.
ResidualSystem assemble(const SplineSequence& state, std::span<const BoundaryCandidateSet> candidates,
                        const TrackerConfig& cfg);

/// Splits a residual vector into unweighted per-family sums of squares.
TermCosts term_costs(const Eigen::VectorXd& residuals, const ResidualLayout& layout, const TrackerConfig& cfg);

}  // namespace cinetrack
