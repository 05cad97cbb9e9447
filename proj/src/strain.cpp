#include "cinetrack/strain.hpp"

#include "cinetrack/curve_model.hpp"

#include <cstdio>
#include <stdexcept>

namespace cinetrack {

void update_peak(StrainCurve& curve) {
    curve.peak = 0.0;
    curve.peak_frame = 0;
    for (std::size_t t = 0; t < curve.values.size(); ++t) {
        if (t == 0 || curve.values[t] < curve.peak) {
            curve.peak = curve.values[t];
            curve.peak_frame = t;
        }
    }
}

StrainCurve circumferential_strain(const SplineSequence& seq, std::size_t reference_frame, Structure structure) {
    if (reference_frame >= seq.n_frames()) {
        throw std::domain_error("circumferential_strain: reference frame " + std::to_string(reference_frame) +
                                " out of range for " + std::to_string(seq.n_frames()) + " frames");
    }
    std::vector<double> lengths(seq.n_frames());
    for (std::size_t t = 0; t < seq.n_frames(); ++t) lengths[t] = arc_length(seq.frame(t));
    const double ref = lengths[reference_frame];
    if (!(ref > 0.0)) throw std::domain_error("circumferential_strain: reference contour has zero length");

    StrainCurve curve;
    curve.structure = structure;
    curve.reference_frame = reference_frame;
    curve.values.resize(lengths.size());
    for (std::size_t t = 0; t < lengths.size(); ++t) {
        curve.values[t] = t == reference_frame ? 0.0 : 100.0 * (lengths[t] - ref) / ref;
    }
    update_peak(curve);
    return curve;
}

std::string format_percent(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    std::string text = buf;
    // Values that round to zero print without a sign.
    if (text == "-0.000000") text = "0.000000";
    return text;
}

std::string strain_to_csv(const StrainCurve& curve) {
    std::string out = "frame,strain_percent\n";
    char line[96];
    for (std::size_t t = 0; t < curve.values.size(); ++t) {
        std::snprintf(line, sizeof line, "%zu,", t);
        out += line + format_percent(curve.values[t]) + "\n";
    }
    std::snprintf(line, sizeof line, ",frame,%zu\n", curve.peak_frame);
    out += "# peak," + format_percent(curve.peak) + line;
    return out;
}

}  // namespace cinetrack
