#include "cinetrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace cinetrack {

namespace {

struct InnerResult {
    int iterations = 0;
    bool converged = false;
    std::vector<double> costs;
};

Eigen::VectorXd residuals_at(const Eigen::VectorXd& x, const ResidualLayout& layout, std::span<const Vec2> targets,
                             const TrackerConfig& cfg) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(layout.rows()));
    evaluate_residuals<double>(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), layout, targets,
                               cfg, std::span<double>(r.data(), layout.rows()));
    return r;
}

// Levenberg-Marquardt at fixed correspondences. Only steps that strictly
// lower the weighted cost are accepted.
InnerResult solve_fixed_correspondences(SplineSequence& state, std::span<const Vec2> targets,
                                        const TrackerConfig& cfg) {
    const ResidualSystem sys = assemble(state, targets, cfg);
    DampedNormalEquations normal(sys);

    Eigen::VectorXd x = state.parameters();
    double cost = sys.cost();
    double lambda = cfg.lm_lambda_init;

    InnerResult out;
    out.costs.push_back(cost);
    while (out.iterations < cfg.lm_max_iterations) {
        if (cost == 0.0) {
            out.converged = true;
            break;
        }
        ++out.iterations;
        const auto delta = normal.solve(lambda);
        if (!delta) {
            lambda *= cfg.lm_lambda_up;
            continue;
        }
        const Eigen::VectorXd trial_x = x + *delta;
        const Eigen::VectorXd trial_r = residuals_at(trial_x, sys.layout, targets, cfg);
        const double trial_cost = trial_r.squaredNorm();

        if (trial_cost < cost) {
            const double relative_decrease = (cost - trial_cost) / cost;
            x = trial_x;
            cost = trial_cost;
            out.costs.push_back(cost);
            normal.set_residuals(trial_r);
            lambda *= cfg.lm_lambda_down;
            if (relative_decrease < cfg.lm_relative_cost_tol) {
                out.converged = true;
                break;
            }
        } else {
            lambda *= cfg.lm_lambda_up;
            // At the minimum a proposal can only shuffle rounding error.
            if (trial_cost - cost <= cfg.lm_relative_cost_tol * cost) {
                out.converged = true;
                break;
            }
        }
    }
    state.set_parameters(x);
    return out;
}

std::vector<Vec2> sample_positions(const SplineSequence& state, int samples_per_segment) {
    std::vector<Vec2> pos;
    pos.reserve(state.n_frames() * state.n_control_points() * static_cast<std::size_t>(samples_per_segment));
    for (std::size_t t = 0; t < state.n_frames(); ++t) {
        for (const CurveSample& s : sample(state.frame(t), samples_per_segment, t)) pos.push_back(s.position);
    }
    return pos;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

bool TrackResult::converged() const {
    return std::all_of(passes.begin(), passes.end(), [](const PassReport& p) { return p.converged; });
}

SplineSequence solve_pass(const SplineSequence& initial, std::span<const BoundaryCandidateSet> candidates,
                          const TrackerConfig& cfg, PassReport* report) {
    cfg.validate();
    SplineSequence state = initial;
    PassReport local;
    local.n_control_points = state.n_control_points();
    bool outer_converged = false;
    bool inner_converged = true;

    for (int outer = 0; outer < cfg.outer_iterations_per_pass; ++outer) {
        const std::vector<Vec2> targets = compute_correspondences(state, candidates, cfg.samples_per_segment);
        const std::vector<Vec2> before = sample_positions(state, cfg.samples_per_segment);

        InnerResult inner = solve_fixed_correspondences(state, targets, cfg);
        ++local.outer_iterations;
        local.lm_iterations += inner.iterations;
        inner_converged = inner_converged && inner.converged;
        local.accepted_costs.push_back(std::move(inner.costs));

        const std::vector<Vec2> after = sample_positions(state, cfg.samples_per_segment);
        double movement = 0.0;
        for (std::size_t i = 0; i < after.size(); ++i) movement += (after[i] - before[i]).norm();
        movement /= static_cast<double>(after.size());
        if (movement < cfg.outer_tolerance_px) {
            outer_converged = true;
            break;
        }
    }

    local.converged = outer_converged && inner_converged;
    local.final_costs = assemble(state, candidates, cfg).term_costs;
    if (report) *report = std::move(local);
    return state;
}

TrackResult track_sequence(std::span<const BoundaryCandidateSet> candidates, const ClosedQuadSpline& initial,
                           const TrackerConfig& cfg) {
    cfg.validate();
    if (candidates.size() < 2) {
        throw std::domain_error("track_sequence: need at least 2 frames, got " + std::to_string(candidates.size()));
    }
    for (std::size_t t = 0; t < candidates.size(); ++t) {
        if (candidates[t].size() == 0) {
            throw std::domain_error("track_sequence: empty candidate set for frame " + std::to_string(t));
        }
    }

    TrackResult result;
    SplineSequence state = SplineSequence::replicate(initial.normalized_winding(), candidates.size());
    for (int pass = 0; pass < cfg.passes; ++pass) {
        if (pass > 0) {
            std::vector<ClosedQuadSpline> refined;
            refined.reserve(state.n_frames());
            for (std::size_t t = 0; t < state.n_frames(); ++t) refined.push_back(subdivide(state.frame(t)));
            state = SplineSequence::from_frames(refined);
        }
        PassReport report;
        state = solve_pass(state, candidates, cfg, &report);
        result.passes.push_back(std::move(report));
    }
    result.splines = std::move(state);
    return result;
}

TrackResult track_sequence(std::span<const BoundaryCandidateSet> candidates, const TrackerConfig& cfg) {
    cfg.validate();
    if (candidates.size() < 2) {
        throw std::domain_error("track_sequence: need at least 2 frames, got " + std::to_string(candidates.size()));
    }
    const auto& first = candidates.front().points();
    const ClosedQuadSpline initial = fit_circle_template(first, cfg.initial_control_points);
    return track_sequence(candidates, initial, cfg);
}

JacobianCheckResult jacobian_check(const SplineSequence& state, std::span<const BoundaryCandidateSet> candidates,
                                   const TrackerConfig& cfg, std::uint64_t seed, const JacobianCheckOptions& options) {
    const std::vector<Vec2> targets = compute_correspondences(state, candidates, cfg.samples_per_segment);

    std::mt19937_64 rng(seed);
    Eigen::VectorXd x = state.parameters();
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] += options.perturbation_px * (2.0 * uniform01(rng) - 1.0);
    SplineSequence perturbed = state;
    perturbed.set_parameters(x);

    ResidualSystem sys = assemble(perturbed, targets, cfg);
    if (options.corrupt_entry != 0.0 && !sys.jacobian.empty()) {
        const auto& e = sys.jacobian.front();
        sys.jacobian.front() = Eigen::Triplet<double>(e.row(), e.col(), e.value() + options.corrupt_entry);
    }
    const Eigen::SparseMatrix<double> J = sys.jacobian_matrix();
    const ResidualLayout& L = sys.layout;

    std::vector<Eigen::Index> columns(static_cast<std::size_t>(J.cols()));
    for (Eigen::Index c = 0; c < J.cols(); ++c) columns[static_cast<std::size_t>(c)] = c;
    if (options.max_columns > 0 && options.max_columns < columns.size()) {
        std::shuffle(columns.begin(), columns.end(), rng);
        columns.resize(options.max_columns);
        std::sort(columns.begin(), columns.end());
    }

    std::vector<long double> params(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) params[static_cast<std::size_t>(i)] = x[i];
    std::vector<long double> plus(L.rows());
    std::vector<long double> minus(L.rows());
    const long double h = options.step;

    JacobianCheckResult result;
    for (const Eigen::Index c : columns) {
        const Eigen::VectorXd analytic = J.col(c);
        const long double original = params[static_cast<std::size_t>(c)];
        params[static_cast<std::size_t>(c)] = original + h;
        evaluate_residuals<long double>(params, L, targets, cfg, plus);
        params[static_cast<std::size_t>(c)] = original - h;
        evaluate_residuals<long double>(params, L, targets, cfg, minus);
        params[static_cast<std::size_t>(c)] = original;

        for (std::size_t row = 0; row < L.rows(); ++row) {
            const long double fd = (plus[row] - minus[row]) / (2.0L * h);
            const double a = analytic[static_cast<Eigen::Index>(row)];
            const double err =
                static_cast<double>(std::fabs(static_cast<long double>(a) - fd)) / std::max(1.0, std::fabs(a));
            ++result.entries_checked;
            switch (family_of_row(L, row)) {
                case ResidualFamily::Cf:
                    result.max_cf = std::max(result.max_cf, err);
                    break;
                case ResidualFamily::Ac:
                    result.max_ac = std::max(result.max_ac, err);
                    break;
                case ResidualFamily::Cv:
                    result.max_cv = std::max(result.max_cv, err);
                    break;
            }
        }
    }
    result.max_relative_error = std::max({result.max_cf, result.max_ac, result.max_cv});
    return result;
}

}  // namespace cinetrack
