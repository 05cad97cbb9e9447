#pragma once

// Annulus phantoms with analytically known boundaries.
//
// Frame t has LV blood pool radius r(t) = R_e (1 - a sin^2(pi t / F)) and a
// myocardial ring of thickness w(t) = W r(0) / r(t), so the wall thickens as
// the cavity contracts. Optionally an RV blood pool crescent sits against the
// epicardium on the -x side.

#include "cinetrack/curve_model.hpp"
#include "cinetrack/label_image.hpp"

#include <cstdint>
#include <vector>

namespace cinetrack {

struct PhantomConfig {
    int width = 128;
    int height = 128;
    int frames = 25;
    double center_x = 64.0;
    double center_y = 64.0;
    double endo_radius = 20.0;
    double wall_thickness = 8.0;
    double contraction_amplitude = 0.25;
    bool rv_enabled = false;
    std::uint64_t seed = 1;
    double jitter_px = 0.0;

    /// Defaults scaled to a square image of `size` pixels.
    static PhantomConfig for_size(int size);

    /// Throws std::domain_error on invalid parameters.
    void validate() const;
};

struct Circle {
    Vec2 center = Vec2::Zero();
    double radius = 0.0;
};

struct PhantomTruth {
    std::vector<double> endo_radius;
    std::vector<double> epi_radius;
    /// 100 (r(t) / r(0) - 1) at every frame.
    std::vector<double> endo_strain;
    std::vector<double> epi_strain;
    /// Continuous-time extremum -100 a.
    double peak_strain = 0.0;
    /// Frame of the most negative sampled endo_strain (lowest index on ties).
    std::size_t peak_frame = 0;
    std::vector<Circle> endo_circles;
    std::vector<Circle> epi_circles;
};

struct Phantom {
    LabelMaskSequence masks;
    PhantomTruth truth;
};

/// Endocardial radius at frame t.
double phantom_endo_radius(const PhantomConfig& cfg, int t);

Phantom generate_annulus_phantom(const PhantomConfig& cfg);

}  // namespace cinetrack
