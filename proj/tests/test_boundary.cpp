#include "cinetrack/boundary.hpp"
#include "cinetrack/kd_tree.hpp"
#include "cinetrack/label_image.hpp"
#include "cinetrack/synth.hpp"

#include "oracles.hpp"
#include "temp_dir.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

namespace cinetrack {
namespace {

namespace fs = std::filesystem;

using test_support::TempDir;

LabelImage block(int w, int h, int r0, int c0, int rows, int cols, std::uint8_t label) {
    LabelImage img(w, h);
    for (int r = r0; r < r0 + rows; ++r)
        for (int c = c0; c < c0 + cols; ++c) img.at(r, c) = label;
    return img;
}

TEST(ExtractBoundary, ThreeByThreeBlock) {
    const LabelImage img = block(7, 7, 2, 2, 3, 3, kLvBloodPool);
    const auto pts = extract_boundary_candidates(img, Structure::LvEndo);
    ASSERT_EQ(pts.size(), 8u);
    for (const Vec2& p : pts) EXPECT_NE(p, Vec2(3.5, 3.5));
    // Row-major order.
    EXPECT_EQ(pts.front(), Vec2(2.5, 2.5));
    EXPECT_EQ(pts.back(), Vec2(4.5, 4.5));
}

TEST(ExtractBoundary, SinglePixel) {
    const LabelImage img = block(5, 5, 0, 4, 1, 1, kRvBloodPool);
    const auto pts = extract_boundary_candidates(img, Structure::RvEndo);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0], Vec2(4.5, 0.5));
}

TEST(ExtractBoundary, EmptyRegionGivesEmptyList) {
    const LabelImage img(8, 8);
    EXPECT_TRUE(extract_boundary_candidates(img, Structure::LvEpi).empty());
}

TEST(ExtractBoundary, KeepsOnlyLargestComponent) {
    LabelImage img = block(20, 20, 5, 5, 6, 6, kLvBloodPool);
    img.at(0, 0) = kLvBloodPool;
    img.at(18, 18) = kLvBloodPool;
    const auto pts = extract_boundary_candidates(img, Structure::LvEndo);
    EXPECT_EQ(pts.size(), 20u);
    for (const Vec2& p : pts) {
        EXPECT_GE(p.x(), 5.0);
        EXPECT_LE(p.x(), 11.0);
    }
}

TEST(ExtractBoundary, InteriorPixelsAbsent) {
    const LabelImage img = block(30, 30, 4, 6, 12, 9, kLvBloodPool);
    const auto pts = extract_boundary_candidates(img, Structure::LvEndo);
    const std::set<std::pair<double, double>> found = [&] {
        std::set<std::pair<double, double>> s;
        for (const Vec2& p : pts) s.insert({p.x(), p.y()});
        return s;
    }();
    for (int r = 5; r < 15; ++r)
        for (int c = 7; c < 14; ++c) EXPECT_FALSE(found.count({c + 0.5, r + 0.5})) << r << "," << c;
}

TEST(ExtractBoundary, TranslationEquivariance) {
    PhantomConfig cfg;
    cfg.frames = 2;
    cfg.contraction_amplitude = 0.0;
    const LabelImage base = generate_annulus_phantom(cfg).masks.frames[0];
    const int dx = 5;
    const int dy = -3;
    LabelImage shifted(base.width, base.height);
    for (int r = 0; r < base.height; ++r)
        for (int c = 0; c < base.width; ++c)
            if (shifted.contains(r + dy, c + dx)) shifted.at(r + dy, c + dx) = base.at(r, c);

    for (Structure s : {Structure::LvEndo, Structure::LvEpi}) {
        const auto a = extract_boundary_candidates(base, s);
        const auto b = extract_boundary_candidates(shifted, s);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(b[i], a[i] + Vec2(dx, dy));
    }
}

TEST(ExtractBoundary, EpicardiumIgnoresInnerInterface) {
    PhantomConfig cfg;
    cfg.frames = 2;
    cfg.contraction_amplitude = 0.0;
    const Phantom ph = generate_annulus_phantom(cfg);
    const auto epi = extract_boundary_candidates(ph.masks.frames[0], Structure::LvEpi);
    const double endo = ph.truth.endo_radius[0];
    for (const Vec2& p : epi) EXPECT_GT((p - Vec2(cfg.center_x, cfg.center_y)).norm(), endo + 1.0);
    const auto count = oracle::brute_force_boundary_count(
        ph.masks.frames[0], [](std::uint8_t l) { return l == kLvBloodPool || l == kLvMyocardium; });
    EXPECT_EQ(epi.size(), count);
}

TEST(ExtractBoundary, AnnulusMatchesBruteForce) {
    PhantomConfig cfg;
    cfg.frames = 3;
    const Phantom ph = generate_annulus_phantom(cfg);
    for (const auto& frame : ph.masks.frames) {
        EXPECT_EQ(extract_boundary_candidates(frame, Structure::LvEndo).size(),
                  oracle::brute_force_boundary_count(frame, [](std::uint8_t l) { return l == kLvBloodPool; }));
    }
}

TEST(KdTree, SinglePoint) {
    const KdTree2 tree({{3, 4}});
    EXPECT_EQ(tree.depth(), 0);
    EXPECT_EQ(tree.nearest({100, -7}), Vec2(3, 4));
}

TEST(KdTree, ConservesPoints) {
    std::mt19937_64 rng(1);
    std::vector<Vec2> pts;
    for (int i = 0; i < 257; ++i) pts.emplace_back(oracle::uniform(rng, 0, 10), oracle::uniform(rng, 0, 10));
    const KdTree2 tree(pts);
    EXPECT_EQ(tree.size(), 257u);
    std::set<std::size_t> hit;
    for (std::size_t i = 0; i < pts.size(); ++i) hit.insert(tree.nearest_index(pts[i]));
    EXPECT_EQ(hit.size(), 257u);
}

TEST(KdTree, Examples) {
    const KdTree2 tree({{10, 0}, {0, 0}});
    EXPECT_EQ(tree.nearest({4, 0}), Vec2(0, 0));
    EXPECT_EQ(tree.nearest({5, 0}), Vec2(0, 0));
    const KdTree2 vertical({{0, 10}, {0, 0}});
    EXPECT_EQ(vertical.nearest({0, 5}), Vec2(0, 0));
}

TEST(KdTree, MatchesLinearScanOracle) {
    std::mt19937_64 rng(42);
    for (int inst = 0; inst < 3; ++inst) {
        std::vector<Vec2> pts;
        for (int i = 0; i < 1000; ++i) {
            if (i % 2) {
                pts.emplace_back(oracle::uniform(rng, 0, 128), oracle::uniform(rng, 0, 128));
            } else {
                pts.emplace_back(static_cast<double>(rng() % 128) + 0.5, static_cast<double>(rng() % 128) + 0.5);
            }
        }
        std::sort(pts.begin(), pts.end(), row_major_less);
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        std::shuffle(pts.begin(), pts.end(), rng);
        const KdTree2 tree(pts);
        for (int q = 0; q < 1000; ++q) {
            const Vec2 query = q % 2 ? Vec2(oracle::uniform(rng, -4, 132), oracle::uniform(rng, -4, 132))
                                     : Vec2(static_cast<double>(rng() % 129), static_cast<double>(rng() % 129));
            ASSERT_EQ(tree.nearest(query), oracle::linear_scan_nearest(pts, query));
        }
    }
}

TEST(CandidateSet, EmptyThrows) { EXPECT_THROW(build_candidate_set({}, 0), std::domain_error); }

TEST(CandidateSet, EmptyFrameNamed) {
    LabelMaskSequence seq;
    seq.width = seq.height = 8;
    seq.frames = {block(8, 8, 1, 1, 3, 3, kLvBloodPool), LabelImage(8, 8)};
    try {
        extract_sequence_candidates(seq, Structure::LvEndo);
        FAIL() << "expected EmptyRegionError";
    } catch (const EmptyRegionError& e) {
        EXPECT_EQ(e.frame(), 1u);
    }
}

TEST(MaskIo, RoundTripAndMeta) {
    TempDir dir;
    PhantomConfig cfg;
    cfg.rv_enabled = true;
    Phantom ph = generate_annulus_phantom(cfg);
    ph.masks.pixel_spacing_x = 1.25;
    ph.masks.pixel_spacing_y = 1.5;
    ph.masks.frame_interval_ms = 33.0;
    write_mask_sequence(dir.path(), ph.masks);

    const LabelMaskSequence back = load_mask_sequence(dir.path());
    EXPECT_EQ(back.size(), 25u);
    EXPECT_EQ(back.width, 128);
    EXPECT_EQ(back.height, 128);
    EXPECT_EQ(back.pixel_spacing_x, 1.25);
    EXPECT_EQ(back.pixel_spacing_y, 1.5);
    EXPECT_EQ(back.frame_interval_ms, 33.0);
    for (std::size_t t = 0; t < back.size(); ++t) EXPECT_EQ(back.frames[t].pixels, ph.masks.frames[t].pixels);
}

TEST(MaskIo, MissingMetaUsesDefaults) {
    TempDir dir;
    write_pgm(dir.path() / "frame_0000.pgm", LabelImage(4, 4));
    write_pgm(dir.path() / "frame_0001.pgm", LabelImage(4, 4));
    const LabelMaskSequence seq = load_mask_sequence(dir.path());
    EXPECT_EQ(seq.size(), 2u);
    EXPECT_EQ(seq.pixel_spacing_x, 1.0);
    EXPECT_EQ(seq.pixel_spacing_y, 1.0);
    EXPECT_EQ(seq.frame_interval_ms, 0.0);
}

TEST(MaskIo, EmptyDirectoryIsIoError) {
    TempDir dir;
    EXPECT_THROW(load_mask_sequence(dir.path()), IoError);
    EXPECT_THROW(load_mask_sequence(dir.path() / "nope"), IoError);
}

TEST(MaskIo, GapNamesMissingIndex) {
    TempDir dir;
    write_pgm(dir.path() / "frame_0000.pgm", LabelImage(4, 4));
    write_pgm(dir.path() / "frame_0002.pgm", LabelImage(4, 4));
    try {
        load_mask_sequence(dir.path());
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find("missing frame index 1"), std::string::npos) << e.what();
    }
}

TEST(MaskIo, IllegalLabelReportsLocation) {
    TempDir dir;
    LabelImage bad(6, 5);
    bad.at(3, 4) = 7;
    write_pgm(dir.path() / "frame_0000.pgm", LabelImage(6, 5));
    write_pgm(dir.path() / "frame_0001.pgm", bad);
    try {
        load_mask_sequence(dir.path());
        FAIL() << "expected FormatError";
    } catch (const FormatError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("label 7"), std::string::npos) << msg;
        EXPECT_NE(msg.find("row 3, column 4"), std::string::npos) << msg;
    }
}

TEST(MaskIo, InconsistentDimensions) {
    TempDir dir;
    write_pgm(dir.path() / "frame_0000.pgm", LabelImage(6, 5));
    write_pgm(dir.path() / "frame_0001.pgm", LabelImage(5, 6));
    EXPECT_THROW(load_mask_sequence(dir.path()), FormatError);
}

TEST(MaskIo, RejectsAsciiPgm) {
    TempDir dir;
    std::ofstream(dir.path() / "frame_0000.pgm") << "P2\n2 2\n255\n0 0 0 0\n";
    EXPECT_THROW(load_mask_sequence(dir.path()), FormatError);
}

TEST(MaskIo, HeaderCommentsAccepted) {
    TempDir dir;
    {
        std::ofstream out(dir.path() / "a.pgm", std::ios::binary);
        out << "P5\n# written by hand\n3 1\n255\n";
        out.put(1).put(2).put(3);
    }
    const LabelImage img = read_pgm(dir.path() / "a.pgm");
    EXPECT_EQ(img.width, 3);
    EXPECT_EQ(img.at(0, 2), 3);
}

}  // namespace
}  // namespace cinetrack
