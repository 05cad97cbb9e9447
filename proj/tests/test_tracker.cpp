#include "cinetrack/boundary.hpp"
#include "cinetrack/strain.hpp"
#include "cinetrack/synth.hpp"
#include "cinetrack/tracker.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>

namespace cinetrack {
namespace {

ClosedQuadSpline circle_spline(int n, double radius, Vec2 center) {
    std::vector<Vec2> cps;
    for (int k = 0; k < n; ++k) {
        const double a = 2.0 * std::numbers::pi * k / n;
        cps.emplace_back(center + radius * Vec2(std::cos(a), std::sin(a)));
    }
    return ClosedQuadSpline(cps);
}

std::vector<BoundaryCandidateSet> phantom_candidates(const PhantomConfig& cfg, Structure s = Structure::LvEndo) {
    return extract_sequence_candidates(generate_annulus_phantom(cfg).masks, s);
}

std::vector<BoundaryCandidateSet> shifted(const std::vector<BoundaryCandidateSet>& in, Vec2 d) {
    std::vector<BoundaryCandidateSet> out;
    for (const auto& c : in) {
        std::vector<Vec2> pts;
        for (const Vec2& p : c.points()) pts.push_back(p + d);
        out.emplace_back(pts, c.frame_index());
    }
    return out;
}

double max_point_difference(const SplineSequence& a, const SplineSequence& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.points().size(); ++i) m = std::max(m, (a.points()[i] - b.points()[i]).norm());
    return m;
}

TEST(SolvePass, ExactSamplesLeaveSplineInPlace) {
    TrackerConfig cfg;
    const ClosedQuadSpline truth = circle_spline(32, 20.0, {64, 64});
    std::vector<BoundaryCandidateSet> cands;
    for (std::size_t t = 0; t < 3; ++t) {
        std::vector<Vec2> pts;
        for (const CurveSample& s : sample(truth, cfg.samples_per_segment)) pts.push_back(s.position);
        cands.emplace_back(pts, t);
    }
    const SplineSequence init = SplineSequence::replicate(truth, 3);
    PassReport report;
    const SplineSequence out = solve_pass(init, cands, cfg, &report);
    EXPECT_LT(max_point_difference(out, init), 1e-3);
    EXPECT_TRUE(report.converged);
}

TEST(TrackSequence, ReachesFinalResolution) {
    const auto cands = phantom_candidates(PhantomConfig{});
    const TrackResult res = track_sequence(cands, TrackerConfig{});
    ASSERT_EQ(res.passes.size(), 3u);
    EXPECT_EQ(res.passes[0].n_control_points, 8u);
    EXPECT_EQ(res.passes[1].n_control_points, 16u);
    EXPECT_EQ(res.passes[2].n_control_points, 32u);
    EXPECT_EQ(res.splines.n_control_points(), 32u);
    EXPECT_EQ(res.splines.n_frames(), 25u);
    EXPECT_TRUE(res.converged());
}

TEST(TrackSequence, FitsAnnulusBoundary) {
    const TrackerConfig cfg;
    const auto cands = phantom_candidates(PhantomConfig{});
    const TrackResult res = track_sequence(cands, cfg);
    const auto targets = compute_correspondences(res.splines, cands, cfg.samples_per_segment);
    double total = 0.0;
    std::size_t i = 0;
    for (std::size_t t = 0; t < res.splines.n_frames(); ++t) {
        for (const CurveSample& s : sample(res.splines.frame(t), cfg.samples_per_segment, t)) {
            total += (s.position - targets[i++]).norm();
        }
    }
    EXPECT_LT(total / static_cast<double>(i), 0.75);
}

TEST(TrackSequence, TranslationEquivariant) {
    const TrackerConfig cfg;
    PhantomConfig pc;
    pc.frames = 9;
    const auto cands = phantom_candidates(pc);
    const Vec2 d(7, -3);
    const TrackResult a = track_sequence(cands, cfg);
    const TrackResult b = track_sequence(shifted(cands, d), cfg);
    double m = 0.0;
    for (std::size_t i = 0; i < a.splines.points().size(); ++i) {
        m = std::max(m, (a.splines.points()[i] + d - b.splines.points()[i]).norm());
    }
    EXPECT_LT(m, 1e-9);
}

TEST(TrackSequence, CyclicRelabelEquivariantWithSharedTemplate) {
    const TrackerConfig cfg;
    PhantomConfig pc;
    pc.frames = 10;
    const auto cands = phantom_candidates(pc);
    const std::size_t F = cands.size();
    const std::size_t k = 3;
    std::vector<BoundaryCandidateSet> rolled;
    for (std::size_t t = 0; t < F; ++t) rolled.emplace_back(cands[(t + k) % F].points(), t);

    const ClosedQuadSpline tmpl = fit_circle_template(cands[0].points(), cfg.initial_control_points);
    const TrackResult a = track_sequence(cands, tmpl, cfg);
    const TrackResult b = track_sequence(rolled, tmpl, cfg);
    double m = 0.0;
    for (std::size_t t = 0; t < F; ++t) {
        for (std::size_t j = 0; j < a.splines.n_control_points(); ++j) {
            m = std::max(m, (a.splines.at((t + k) % F, j) - b.splines.at(t, j)).norm());
        }
    }
    EXPECT_LT(m, 1e-9);
}

TEST(TrackSequence, StaticSequenceHasNoStrainOrAcceleration) {
    const TrackerConfig cfg;
    PhantomConfig pc;
    pc.contraction_amplitude = 0.0;
    const TrackResult res = track_sequence(phantom_candidates(pc), cfg);
    const StrainCurve curve = circumferential_strain(res.splines, 0);
    for (double v : curve.values) EXPECT_LT(std::fabs(v), 0.2);
    EXPECT_LT(res.passes.back().final_costs.ac, 1e-6);
}

TEST(TrackSequence, AcceptedCostsNeverIncrease) {
    const TrackResult res = track_sequence(phantom_candidates(PhantomConfig{}), TrackerConfig{});
    std::size_t lists = 0;
    for (const PassReport& p : res.passes) {
        for (const auto& costs : p.accepted_costs) {
            ++lists;
            for (std::size_t i = 1; i < costs.size(); ++i) EXPECT_LE(costs[i], costs[i - 1]);
        }
    }
    EXPECT_GT(lists, 0u);
}

TEST(TrackSequence, RecoversContractionPeak) {
    const TrackResult res = track_sequence(phantom_candidates(PhantomConfig{}), TrackerConfig{});
    const StrainCurve curve = circumferential_strain(res.splines, 0);
    EXPECT_NEAR(curve.peak, -25.0, 1.5);
}

TEST(TrackSequence, InputErrors) {
    const TrackerConfig cfg;
    const auto cands = phantom_candidates(PhantomConfig{});
    const std::vector<BoundaryCandidateSet> one(cands.begin(), cands.begin() + 1);
    EXPECT_THROW(track_sequence(one, cfg), std::domain_error);

    TrackerConfig bad;
    bad.passes = 0;
    EXPECT_THROW(bad.validate(), std::domain_error);
    bad = TrackerConfig{};
    bad.rho_cf = -1.0;
    EXPECT_THROW(bad.validate(), std::domain_error);
    bad = TrackerConfig{};
    bad.samples_per_segment = 0;
    EXPECT_THROW(bad.validate(), std::domain_error);
}

}  // namespace
}  // namespace cinetrack
