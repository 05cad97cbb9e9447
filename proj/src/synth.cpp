#include "cinetrack/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace cinetrack {

namespace {

// RV pool radius relative to the current endocardial radius, and how far its
// centre sits beyond the epicardium (as a fraction of its radius). The disk
// overlaps the myocardium and only background pixels are relabelled, which
// leaves a crescent hugging the LV wall.
constexpr double kRvRadiusFactor = 0.75;
constexpr double kRvCenterOffset = 0.4;

double contraction_profile(int t, int frames) {
    // sin^2 is symmetric about F/2; folding t keeps frames t and F - t bit-identical.
    const int folded = std::min(t, frames - t);
    const double s = std::sin(std::numbers::pi * folded / frames);
    return s * s;
}

double outer_limit(const PhantomConfig& cfg) {
    return std::min({cfg.center_x, cfg.center_y, cfg.width - cfg.center_x, cfg.height - cfg.center_y}) - 2.0;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void apply_jitter(LabelImage& img, double jitter_px, std::uint64_t seed) {
    if (jitter_px <= 0.0) return;
    const double flip_probability = std::min(1.0, 0.25 * jitter_px);
    const LabelImage original = img;
    std::mt19937_64 rng(seed);
    constexpr std::array<std::array<int, 2>, 4> nbs{{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
    for (int row = 0; row < img.height; ++row) {
        for (int col = 0; col < img.width; ++col) {
            const std::uint8_t own = original.at(row, col);
            std::uint8_t other = own;
            for (const auto& [dr, dc] : nbs) {
                if (original.contains(row + dr, col + dc) && original.at(row + dr, col + dc) != own) {
                    other = original.at(row + dr, col + dc);
                    break;
                }
            }
            if (other == own) continue;
            // Draw for every boundary-adjacent pixel so the stream does not
            // depend on earlier outcomes.
            if (uniform01(rng) < flip_probability) img.at(row, col) = other;
        }
    }
}

}  // namespace

PhantomConfig PhantomConfig::for_size(int size) {
    PhantomConfig cfg;
    cfg.width = size;
    cfg.height = size;
    cfg.center_x = size / 2.0;
    cfg.center_y = size / 2.0;
    cfg.endo_radius = size * 5.0 / 32.0;
    cfg.wall_thickness = size / 16.0;
    return cfg;
}

void PhantomConfig::validate() const {
    auto fail = [](const std::string& what) { throw std::domain_error("PhantomConfig: " + what); };
    if (width <= 0 || height <= 0) fail("image dimensions must be positive");
    if (frames < 2) fail("need at least 2 frames, got " + std::to_string(frames));
    if (!(endo_radius > 0.0)) fail("endo_radius must be positive");
    if (!(wall_thickness > 0.0)) fail("wall_thickness must be positive");
    if (!(contraction_amplitude >= 0.0 && contraction_amplitude < 1.0)) fail("contraction_amplitude must be in [0, 1)");
    if (!(jitter_px >= 0.0)) fail("jitter_px must be non-negative");
    if (!(endo_radius + wall_thickness < std::min(width, height) / 2.0 - 2.0)) {
        fail("endo_radius + wall_thickness must be below min(width, height) / 2 - 2");
    }
    if (!(endo_radius + wall_thickness <= outer_limit(*this))) fail("annulus does not fit around the centre");
}

double phantom_endo_radius(const PhantomConfig& cfg, int t) {
    return cfg.endo_radius * (1.0 - cfg.contraction_amplitude * contraction_profile(t, cfg.frames));
}

Phantom generate_annulus_phantom(const PhantomConfig& cfg) {
    cfg.validate();
    Phantom out;
    out.masks.width = cfg.width;
    out.masks.height = cfg.height;
    PhantomTruth& truth = out.truth;
    const Vec2 center(cfg.center_x, cfg.center_y);
    const double r0 = phantom_endo_radius(cfg, 0);
    const double limit = outer_limit(cfg);

    for (int t = 0; t < cfg.frames; ++t) {
        const double r = phantom_endo_radius(cfg, t);
        const double outer = std::min(r + cfg.wall_thickness * r0 / r, limit);
        const double rv_radius = kRvRadiusFactor * r;
        const Vec2 rv_center(cfg.center_x - (outer + kRvCenterOffset * rv_radius), cfg.center_y);

        LabelImage img(cfg.width, cfg.height);
        for (int row = 0; row < cfg.height; ++row) {
            for (int col = 0; col < cfg.width; ++col) {
                const Vec2 p(col + 0.5, row + 0.5);
                const double d = (p - center).norm();
                if (d < r) {
                    img.at(row, col) = kLvBloodPool;
                } else if (d < outer) {
                    img.at(row, col) = kLvMyocardium;
                } else if (cfg.rv_enabled && (p - rv_center).norm() < rv_radius) {
                    img.at(row, col) = kRvBloodPool;
                }
            }
        }
        apply_jitter(img, cfg.jitter_px, cfg.seed * 1000003ULL + static_cast<std::uint64_t>(t));
        out.masks.frames.push_back(std::move(img));

        truth.endo_radius.push_back(r);
        truth.epi_radius.push_back(outer);
        truth.endo_circles.push_back({center, r});
        truth.epi_circles.push_back({center, outer});
    }

    const double epi0 = truth.epi_radius.front();
    for (int t = 0; t < cfg.frames; ++t) {
        const auto i = static_cast<std::size_t>(t);
        truth.endo_strain.push_back(t == 0 ? 0.0 : 100.0 * (truth.endo_radius[i] / r0 - 1.0));
        truth.epi_strain.push_back(t == 0 ? 0.0 : 100.0 * (truth.epi_radius[i] / epi0 - 1.0));
        if (truth.endo_strain[i] < truth.endo_strain[truth.peak_frame]) truth.peak_frame = i;
    }
    truth.peak_strain = -100.0 * cfg.contraction_amplitude;
    return out;
}

}  // namespace cinetrack
