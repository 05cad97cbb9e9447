#include "cinetrack/strain.hpp"

#include "oracles.hpp"

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <sstream>

namespace cinetrack {
namespace {

std::vector<Vec2> random_contour(std::mt19937_64& rng, int n) {
    std::vector<Vec2> cps;
    for (int k = 0; k < n; ++k) {
        const double a = 2.0 * std::numbers::pi * k / n;
        const double r = oracle::uniform(rng, 15.0, 25.0);
        cps.emplace_back(50.0 + r * std::cos(a), 60.0 + r * std::sin(a));
    }
    return cps;
}

SplineSequence scaled_sequence(const std::vector<Vec2>& base, const std::vector<double>& scales) {
    std::vector<ClosedQuadSpline> frames;
    for (double s : scales) {
        std::vector<Vec2> cps;
        for (const Vec2& p : base) cps.push_back(s * p);
        frames.emplace_back(cps);
    }
    return SplineSequence::from_frames(frames);
}

TEST(Strain, IdenticalFramesGiveZero) {
    std::mt19937_64 rng(1);
    const auto seq = scaled_sequence(random_contour(rng, 16), std::vector<double>(6, 1.0));
    const StrainCurve c = circumferential_strain(seq, 0);
    for (double v : c.values) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(c.peak, 0.0);
    EXPECT_EQ(c.peak_frame, 0u);
}

TEST(Strain, UniformScaling) {
    std::mt19937_64 rng(2);
    const auto seq = scaled_sequence(random_contour(rng, 32), {1.0, 0.75, 1.0});
    const StrainCurve c = circumferential_strain(seq, 0);
    EXPECT_NEAR(c.values[1], -25.0, 1e-9);
    EXPECT_NEAR(c.peak, -25.0, 1e-9);
    EXPECT_EQ(c.peak_frame, 1u);
    EXPECT_EQ(c.values[0], 0.0);
}

TEST(Strain, ReferenceFrameIsExactlyZero) {
    std::mt19937_64 rng(3);
    const auto seq = scaled_sequence(random_contour(rng, 12), {1.0, 0.9, 0.8, 0.95});
    for (std::size_t ref = 0; ref < 4; ++ref) EXPECT_EQ(circumferential_strain(seq, ref).values[ref], 0.0);
    EXPECT_THROW(circumferential_strain(seq, 4), std::domain_error);
}

TEST(Strain, RigidMotionAndRelabelInvariance) {
    std::mt19937_64 rng(4);
    const std::vector<double> scales{1.0, 0.92, 0.81, 0.77, 0.85, 0.97};
    const auto base = random_contour(rng, 20);
    const auto seq = scaled_sequence(base, scales);
    const StrainCurve c = circumferential_strain(seq, 0);

    std::vector<ClosedQuadSpline> moved;
    for (std::size_t t = 0; t < scales.size(); ++t) {
        const Eigen::Matrix2d rot = Eigen::Rotation2Dd(0.3 * static_cast<double>(t) - 1.0).toRotationMatrix();
        const Vec2 shift(oracle::uniform(rng, -20, 20), oracle::uniform(rng, -20, 20));
        std::vector<Vec2> cps;
        const ClosedQuadSpline frame = seq.frame(t);
        for (const Vec2& p : frame.control_points()) cps.push_back(rot * p + shift);
        moved.emplace_back(cps);
    }
    const StrainCurve m = circumferential_strain(SplineSequence::from_frames(moved), 0);
    for (std::size_t t = 0; t < scales.size(); ++t) EXPECT_NEAR(m.values[t], c.values[t], 1e-9);

    // Cyclic relabel of control points within every frame.
    std::vector<ClosedQuadSpline> rolled;
    for (std::size_t t = 0; t < scales.size(); ++t) {
        auto cps = seq.frame(t).control_points();
        std::rotate(cps.begin(), cps.begin() + 5, cps.end());
        rolled.emplace_back(cps);
    }
    const StrainCurve r = circumferential_strain(SplineSequence::from_frames(rolled), 0);
    for (std::size_t t = 0; t < scales.size(); ++t) EXPECT_NEAR(r.values[t], c.values[t], 1e-9);
}

TEST(Strain, ShorterContourIsNegative) {
    std::mt19937_64 rng(5);
    const auto base = random_contour(rng, 10);
    std::vector<Vec2> inner;
    for (const Vec2& p : base) inner.push_back(Vec2(50, 60) + 0.6 * (p - Vec2(50, 60)));
    const auto seq = SplineSequence::from_frames({ClosedQuadSpline(base), ClosedQuadSpline(inner)});
    const StrainCurve c = circumferential_strain(seq, 0);
    EXPECT_LT(c.values[1], 0.0);
    EXPECT_NEAR(c.values[1], -40.0, 1e-9);
}

TEST(Strain, ZeroLengthReferenceRejected) {
    const ClosedQuadSpline point({{1, 1}, {1, 1}, {1, 1}});
    const ClosedQuadSpline tri({{0, 0}, {4, 0}, {0, 4}});
    EXPECT_THROW(circumferential_strain(SplineSequence::from_frames({point, tri}), 0), std::domain_error);
}

TEST(Strain, PeakTiesPickLowestFrame) {
    StrainCurve c;
    c.values = {0.0, -3.0, -5.0, -5.0, -1.0};
    update_peak(c);
    EXPECT_EQ(c.peak, -5.0);
    EXPECT_EQ(c.peak_frame, 2u);
}

TEST(StrainCsv, Format) {
    StrainCurve c;
    c.values = {0.0, -12.5, -1e-9, 3.25};
    update_peak(c);
    EXPECT_EQ(strain_to_csv(c),
              "frame,strain_percent\n"
              "0,0.000000\n"
              "1,-12.500000\n"
              "2,0.000000\n"
              "3,3.250000\n"
              "# peak,-12.500000,frame,1\n");
}

TEST(StrainCsv, RoundTripWithinPrintPrecision) {
    std::mt19937_64 rng(6);
    const auto seq = scaled_sequence(random_contour(rng, 24), {1.0, 0.9, 0.8123, 0.777, 0.9});
    const StrainCurve c = circumferential_strain(seq, 0);
    std::istringstream in(strain_to_csv(c));
    std::string line;
    std::getline(in, line);
    ASSERT_EQ(line, "frame,strain_percent");
    for (std::size_t t = 0; t < c.values.size(); ++t) {
        ASSERT_TRUE(std::getline(in, line));
        const auto comma = line.find(',');
        EXPECT_EQ(std::stoul(line.substr(0, comma)), t);
        EXPECT_NEAR(std::stod(line.substr(comma + 1)), c.values[t], 5e-7);
    }
    ASSERT_TRUE(std::getline(in, line));
    EXPECT_EQ(line.rfind("# peak,", 0), 0u);
}

}  // namespace
}  // namespace cinetrack
