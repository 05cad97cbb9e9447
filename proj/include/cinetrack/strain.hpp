#pragma once

#include "cinetrack/boundary.hpp"
#include "cinetrack/spline_sequence.hpp"

#include <string>
#include <vector>

namespace cinetrack {

/// Global circumferential strain in percent; negative means shortening.
struct StrainCurve {
    Structure structure = Structure::LvEndo;
    std::size_t reference_frame = 0;
    std::vector<double> values;
    double peak = 0.0;
    std::size_t peak_frame = 0;
};

/// values[t] = 100 (L(t) - L(ref)) / L(ref) with L the contour arc length.
/// Throws std::domain_error for an out-of-range reference or a zero-length
/// reference contour.
StrainCurve circumferential_strain(const SplineSequence& seq, std::size_t reference_frame,
                                   Structure structure = Structure::LvEndo);

/// Fills peak / peak_frame from values (minimum, lowest index on ties).
void update_peak(StrainCurve& curve);

/// Six decimals, with negative zero printed as 0.000000.
std::string format_percent(double value);

/// "frame,strain_percent" header, one row per frame with 6 decimals, then
/// "# peak,<value>,frame,<k>".
std::string strain_to_csv(const StrainCurve& curve);

}  // namespace cinetrack
