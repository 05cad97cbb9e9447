#include "cinetrack/residuals.hpp"

#include <stdexcept>
#include <string>

namespace cinetrack {

void TrackerConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::domain_error(std::string("TrackerConfig: ") + what);
    };
    require(rho_cf > 0.0, "rho_cf must be positive");
    require(rho_ac > 0.0, "rho_ac must be positive");
    require(rho_cv > 0.0, "rho_cv must be positive");
    require(samples_per_segment > 0, "samples_per_segment must be positive");
    require(passes >= 1, "passes must be at least 1");
    require(initial_control_points >= 3, "initial_control_points must be at least 3");
    require(outer_iterations_per_pass > 0, "outer_iterations_per_pass must be positive");
    require(outer_tolerance_px > 0.0, "outer_tolerance_px must be positive");
    require(lm_max_iterations > 0, "lm_max_iterations must be positive");
    require(lm_lambda_init > 0.0, "lm_lambda_init must be positive");
    require(lm_lambda_up > 1.0, "lm_lambda_up must exceed 1");
    require(lm_lambda_down > 0.0 && lm_lambda_down < 1.0, "lm_lambda_down must lie in (0, 1)");
    require(lm_relative_cost_tol > 0.0, "lm_relative_cost_tol must be positive");
}

Eigen::SparseMatrix<double> ResidualSystem::jacobian_matrix() const {
    Eigen::SparseMatrix<double> J(residuals.size(), static_cast<Eigen::Index>(n_parameters));
    J.setFromTriplets(jacobian.begin(), jacobian.end());
    return J;
}

std::vector<Vec2> compute_correspondences(const SplineSequence& state,
                                          std::span<const BoundaryCandidateSet> candidates, int samples_per_segment) {
    if (candidates.size() != state.n_frames()) {
        throw std::domain_error("compute_correspondences: " + std::to_string(candidates.size()) +
                                " candidate sets for " + std::to_string(state.n_frames()) + " frames");
    }
    std::vector<Vec2> targets;
    targets.reserve(state.n_frames() * state.n_control_points() * static_cast<std::size_t>(samples_per_segment));
    for (std::size_t t = 0; t < state.n_frames(); ++t) {
        if (candidates[t].size() == 0) {
            throw std::domain_error("compute_correspondences: empty candidate set for frame " + std::to_string(t));
        }
        for (const CurveSample& s : sample(state.frame(t), samples_per_segment, t)) {
            targets.push_back(candidates[t].nearest(s.position));
        }
    }
    return targets;
}

TermCosts term_costs(const Eigen::VectorXd& residuals, const ResidualLayout& layout, const TrackerConfig& cfg) {
    const auto ac = static_cast<Eigen::Index>(layout.ac_offset());
    const auto cv = static_cast<Eigen::Index>(layout.cv_offset());
    TermCosts costs;
    costs.cf = residuals.segment(0, ac).squaredNorm() / cfg.rho_cf;
    costs.ac = residuals.segment(ac, cv - ac).squaredNorm() / cfg.rho_ac;
    costs.cv = residuals.segment(cv, residuals.size() - cv).squaredNorm() / cfg.rho_cv;
    return costs;
}

ResidualSystem assemble(const SplineSequence& state, std::span<const Vec2> targets, const TrackerConfig& cfg) {
    ResidualSystem sys;
    sys.layout = {state.n_frames(), state.n_control_points(), static_cast<std::size_t>(cfg.samples_per_segment)};
    const ResidualLayout& L = sys.layout;
    sys.n_parameters = L.cols();
    if (targets.size() != L.samples()) {
        throw std::domain_error("assemble: expected " + std::to_string(L.samples()) + " correspondences, got " +
                                std::to_string(targets.size()));
    }

    const Eigen::VectorXd x = state.parameters();
    sys.residuals.resize(static_cast<Eigen::Index>(L.rows()));
    evaluate_residuals<double>(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), L, targets,
                               cfg, std::span<double>(sys.residuals.data(), L.rows()));
    sys.term_costs = term_costs(sys.residuals, L, cfg);

    const std::size_t F = L.frames;
    const std::size_t N = L.control_points;
    const std::size_t S = L.samples_per_segment;
    auto col = [N](std::size_t t, std::size_t j, std::size_t c) { return static_cast<int>(2 * (t * N + j % N) + c); };

    sys.jacobian.reserve(3 * L.rows());
    const double w_cf = std::sqrt(cfg.rho_cf);
    std::size_t row = 0;
    for (std::size_t t = 0; t < F; ++t) {
        for (std::size_t p = 0; p < N; ++p) {
            const std::size_t prev = (p + N - 1) % N;
            for (std::size_t k = 0; k < S; ++k) {
                const auto w = segment_point_weights(static_cast<double>(k) / static_cast<double>(S));
                for (std::size_t c = 0; c < 2; ++c, ++row) {
                    const int r = static_cast<int>(row);
                    sys.jacobian.emplace_back(r, col(t, prev, c), w_cf * w[0]);
                    sys.jacobian.emplace_back(r, col(t, p, c), w_cf * w[1]);
                    sys.jacobian.emplace_back(r, col(t, p + 1, c), w_cf * w[2]);
                }
            }
        }
    }

    const double w_ac = std::sqrt(cfg.rho_ac);
    for (std::size_t t = 0; t < F; ++t) {
        for (std::size_t j = 0; j < N; ++j) {
            for (std::size_t c = 0; c < 2; ++c, ++row) {
                const int r = static_cast<int>(row);
                sys.jacobian.emplace_back(r, col((t + 2) % F, j, c), w_ac);
                sys.jacobian.emplace_back(r, col((t + 1) % F, j, c), -2.0 * w_ac);
                sys.jacobian.emplace_back(r, col(t, j, c), w_ac);
            }
        }
    }

    // 2 (x0 - 2 x1 + x2) with midpoint extraction is P_{p-1} - 2 P_p + P_{p+1}.
    const double w_cv = std::sqrt(cfg.rho_cv);
    for (std::size_t t = 0; t < F; ++t) {
        for (std::size_t p = 0; p < N; ++p) {
            const std::size_t prev = (p + N - 1) % N;
            for (std::size_t c = 0; c < 2; ++c, ++row) {
                const int r = static_cast<int>(row);
                sys.jacobian.emplace_back(r, col(t, prev, c), w_cv);
                sys.jacobian.emplace_back(r, col(t, p, c), -2.0 * w_cv);
                sys.jacobian.emplace_back(r, col(t, p + 1, c), w_cv);
            }
        }
    }
    return sys;
}

ResidualSystem assemble(const SplineSequence& state, std::span<const BoundaryCandidateSet> candidates,
                        const TrackerConfig& cfg) {
    const std::vector<Vec2> targets = compute_correspondences(state, candidates, cfg.samples_per_segment);
    return assemble(state, targets, cfg);
}

}  // namespace cinetrack
